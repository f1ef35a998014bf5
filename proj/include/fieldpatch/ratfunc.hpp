#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "fieldpatch/poly.hpp"

namespace fieldpatch {

// Rational function in x over k, kept in canonical form: numerator and
// denominator coprime, denominator monic.  Equality is therefore structural.
class RatFunc {
  public:
    explicit RatFunc(long chr = 0) : num_(chr), den_(Poly::one(chr)) {}
    RatFunc(Poly num, Poly den);

    static RatFunc zero(long chr) { return RatFunc(chr); }
    static RatFunc one(long chr) { return of_poly(Poly::one(chr)); }
    static RatFunc of_poly(Poly p);
    static RatFunc of_scalar(Scalar s) { return of_poly(Poly::constant(std::move(s))); }
    static RatFunc x(long chr) { return of_poly(Poly::x(chr)); }

    long characteristic() const { return num_.characteristic(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == Poly::one(characteristic()) && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    RatFunc inverse() const;
    RatFunc scaled(const Scalar& s) const { return *this * of_scalar(s); }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    // order of vanishing along the monic nonconstant place polynomial:
    // multiplicity in the numerator minus multiplicity in the denominator
    int order_at(const Poly& place) const;
    // order of vanishing at infinity: deg den - deg num; zero function
    // excluded from both order queries
    int order_at_infinity() const;

    // value at a point of k, or nullopt when the denominator vanishes there
    std::optional<Scalar> eval(const Scalar& at) const;

    // d/dx by the quotient rule, reduced
    RatFunc derivative() const;

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const RatFunc& f);

  private:
    struct canonical_tag {};
    // trusted constructor: inputs already coprime with monic denominator
    RatFunc(canonical_tag, Poly num, Poly den);

    void reduce();

    Poly num_;
    Poly den_;
};

// d/dx, the derivation on k(x) used by the differential-module layer; kills
// constants and (once lifted coefficientwise to t-series) kills t
inline RatFunc derive_x(const RatFunc& f) { return f.derivative(); }

} // namespace fieldpatch
