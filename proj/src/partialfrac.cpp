#include "fieldpatch/partialfrac.hpp"

#include <algorithm>

namespace fieldpatch {

RatFunc PartialFractions::recombined() const {
    RatFunc acc = RatFunc::of_poly(polypart);
    for (const auto& p : parts)
        acc += RatFunc(p.numer, p.modulus.pow(p.exp));
    return acc;
}

PartialFractions partial_fractions(const RatFunc& f, const std::vector<Poly>& moduli) {
    const long chr = f.characteristic();
    for (size_t i = 0; i < moduli.size(); ++i) {
        if (moduli[i].degree() < 1 || !moduli[i].is_monic())
            throw input_error("moduli must be monic and nonconstant");
        for (size_t j = i + 1; j < moduli.size(); ++j)
            if (poly_gcd(moduli[i], moduli[j]).degree() > 0)
                throw input_error("moduli must be pairwise coprime");
    }

    PartialFractions out;
    auto [q, r] = poly_divrem(f.num(), f.den());
    out.polypart = q;
    if (r.is_zero())
        return out;

    // den = prod moduli^exp; anything left over is unsupported
    Poly residual = f.den();
    std::vector<std::pair<Poly, int>> powers;
    for (const auto& m : moduli) {
        int e = 0;
        for (;;) {
            auto [qq, rr] = poly_divrem(residual, m);
            if (!rr.is_zero())
                break;
            residual = qq;
            ++e;
        }
        if (e > 0)
            powers.emplace_back(m, e);
    }
    if (residual.degree() > 0)
        throw membership_error("denominator has a factor prime to every modulus: " +
                               residual.str());

    // split r / prod(A_i) one coprime factor at a time via Bezout
    Poly num = r;
    for (size_t i = 0; i < powers.size(); ++i) {
        const Poly a = powers[i].first.pow(powers[i].second);
        Poly b = Poly::one(chr);
        for (size_t j = i + 1; j < powers.size(); ++j)
            b *= powers[j].first.pow(powers[j].second);
        if (b.is_constant()) {
            // last factor: num/a is already proper
            auto [qa, ra] = poly_divrem(num, a);
            if (!qa.is_zero())
                throw error("partial fraction residue not proper");
            out.parts.push_back({powers[i].first, powers[i].second, ra});
            break;
        }
        // num/(a*b) = (num*t mod a)/a + carried/b with s*a + t*b = 1
        auto e = poly_xgcd(a, b);
        auto [q1, n1] = poly_divrem(num * e.t, a);
        out.parts.push_back({powers[i].first, powers[i].second, n1});
        num = num * e.s + q1 * b;
        auto [qc, nc] = poly_divrem(num, b);
        if (!qc.is_zero())
            throw error("partial fraction carry not proper");
        num = nc;
    }
    return out;
}

std::vector<Poly> gcd_free_basis(std::vector<Poly> in) {
    std::vector<Poly> basis;
    // inserting f against a pairwise-coprime basis keeps it pairwise coprime;
    // total inserted degree strictly drops on every split, so this terminates
    std::vector<Poly> pending;
    for (auto& f : in)
        if (f.degree() > 0)
            pending.push_back(f.monic());
    while (!pending.empty()) {
        Poly f = pending.back();
        pending.pop_back();
        if (f.degree() < 1)
            continue;
        bool split = false;
        for (size_t i = 0; i < basis.size(); ++i) {
            const Poly g = poly_gcd(f, basis[i]);
            if (g.degree() > 0) {
                Poly b = basis[i];
                basis.erase(basis.begin() + static_cast<long>(i));
                pending.push_back(g);
                pending.push_back(poly_exact_div(b, g));
                pending.push_back(poly_exact_div(f, g));
                split = true;
                break;
            }
        }
        if (!split && std::find(basis.begin(), basis.end(), f) == basis.end())
            basis.push_back(f);
    }
    std::sort(basis.begin(), basis.end(), [](const Poly& a, const Poly& b) {
        if (a.degree() != b.degree())
            return a.degree() < b.degree();
        return a.str() < b.str();
    });
    return basis;
}

} // namespace fieldpatch
