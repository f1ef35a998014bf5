#pragma once

#include <vector>

#include "fieldpatch/ratfunc.hpp"

namespace fieldpatch {

// f = polypart + sum of numer / modulus^exp with deg numer < deg modulus^exp
struct PartialFractions {
    Poly polypart;
    struct Part {
        Poly modulus; // one of the requested moduli, monic
        int exp;
        Poly numer;
    };
    std::vector<Part> parts;

    RatFunc recombined() const;
};

// Decomposes f over the given pairwise-coprime monic nonconstant moduli.
// Throws membership_error when the denominator of f has a factor prime to
// every modulus.  The decomposition is exact: recombined() == f.
PartialFractions partial_fractions(const RatFunc& f, const std::vector<Poly>& moduli);

// Pairwise-coprime monic polynomials generating every input multiplicatively
// (a gcd-free basis).  Constant inputs are dropped.
std::vector<Poly> gcd_free_basis(std::vector<Poly> in);

} // namespace fieldpatch
