#pragma once

#include <vector>

#include "fieldpatch/ratfunc.hpp"

namespace fieldpatch {

// A closed point of the projective x-line: either the point at infinity or
// the vanishing locus of a monic nonconstant polynomial.  Place polynomials
// are not assumed irreducible; sets of places used together must be pairwise
// coprime, which callers validate.
class Place {
  public:
    static Place infinity(long chr);
    static Place finite(Poly p);
    static Place zero_of_x(long chr) { return finite(Poly::x(chr)); }

    bool at_infinity() const { return inf_; }
    const Poly& poly() const;
    long characteristic() const { return chr_; }
    int degree() const { return inf_ ? 1 : p_.degree(); }

    bool operator==(const Place& o) const;
    bool operator!=(const Place& o) const { return !(*this == o); }

    // ord_P(f): multiplicity at the place, negative for poles; f != 0
    int order_of(const RatFunc& f) const;

    std::string str() const;

  private:
    Place(long chr, bool inf, Poly p) : chr_(chr), inf_(inf), p_(std::move(p)) {}

    long chr_;
    bool inf_;
    Poly p_;
};

// Formal sum of places with integer multiplicities, kept merged and without
// zero terms.
class Divisor {
  public:
    explicit Divisor(long chr = 0) : chr_(chr) {}

    long characteristic() const { return chr_; }
    Divisor& add(const Place& p, int mult);
    const std::vector<std::pair<Place, int>>& terms() const { return t_; }

    int degree() const;
    bool is_effective() const;
    int multiplicity_of(const Place& p) const;

    std::string str() const;

  private:
    long chr_;
    std::vector<std::pair<Place, int>> t_;
};

// Basis of the space L(D) = { f : div(f) + D >= 0 } on the projective line,
// for effective D.  With B the product of the finite place polynomials to
// their multiplicities and a the multiplicity at infinity, the functions
// x^j / B for 0 <= j <= deg B + a form a basis, so dim L(D) = deg D + 1.
std::vector<RatFunc> rr_basis(const Divisor& d);

} // namespace fieldpatch
