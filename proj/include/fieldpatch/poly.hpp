#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fieldpatch/scalar.hpp"

namespace fieldpatch {

// Dense univariate polynomial over k with ascending coefficients and no
// trailing zeros.  The zero polynomial has an empty coefficient vector and
// degree -1.  The characteristic lives on the polynomial itself so the zero
// polynomial still knows which field it is over.
class Poly {
  public:
    explicit Poly(long chr = 0) : chr_(chr) {}
    Poly(long chr, std::vector<Scalar> coeffs);

    static Poly zero(long chr) { return Poly(chr); }
    static Poly constant(Scalar c);
    static Poly one(long chr) { return constant(Scalar::one(chr)); }
    // x^n, or c * x^n
    static Poly monomial(long chr, int n, Scalar c);
    static Poly x(long chr) { return monomial(chr, 1, Scalar::one(chr)); }
    // from integer coefficients, ascending
    static Poly of_ints(long chr, std::initializer_list<long> cs);

    long characteristic() const { return chr_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

    // coefficient of x^i (zero beyond the stored range)
    Scalar coeff(int i) const;
    const std::vector<Scalar>& coeffs() const { return c_; }
    Scalar lead() const;

    // index of the lowest nonzero coefficient; throws on the zero polynomial
    int valuation_x() const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(const Scalar& s) const;
    // multiply by x^n (n >= 0)
    Poly shifted(int n) const;
    Poly pow(int n) const;

    bool operator==(const Poly& o) const { return chr_ == o.chr_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Scalar eval(const Scalar& at) const;
    Poly derivative() const;
    Poly monic() const;

    // "x", "x^2 - 3/4*x", used in diagnostics and JSON pretty mode
    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const Poly& p);

  private:
    void trim();
    void check_same(const Poly& o) const {
        if (chr_ != o.chr_)
            throw ring_mismatch("polynomial characteristic mismatch");
    }

    long chr_;
    std::vector<Scalar> c_;
};

// quotient and remainder with deg r < deg b; b != 0
struct PolyDivRem {
    Poly quot;
    Poly rem;
};
PolyDivRem poly_divrem(const Poly& a, const Poly& b);

// a / b when the division is exact; throws otherwise
Poly poly_exact_div(const Poly& a, const Poly& b);

// Extended Euclid.  g is monic (or zero when both inputs are zero) and
// s*a + t*b == g.
struct PolyXgcd {
    Poly g;
    Poly s;
    Poly t;
};
PolyXgcd poly_xgcd(const Poly& a, const Poly& b);
Poly poly_gcd(const Poly& a, const Poly& b);

// multiplicity of the (monic, nonconstant) factor d in a; a != 0
int poly_multiplicity(const Poly& a, const Poly& d);

} // namespace fieldpatch
