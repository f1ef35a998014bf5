#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "fieldpatch/errors.hpp"

namespace fieldpatch {

// An element of the base field k, which is either Q (characteristic 0) or
// F_p for an odd prime p.  Every value is tagged with its characteristic so
// that mixed arithmetic is caught instead of silently coercing.  In
// characteristic p the value is kept as the canonical residue in [0, p).
class Scalar {
  public:
    Scalar() : chr_(0), v_(0) {}

    static Scalar zero(long chr) { return Scalar(chr, 0); }
    static Scalar one(long chr) { return Scalar(chr, 1); }
    static Scalar of_int(long chr, long n) { return Scalar(chr, mpq_class(n)); }
    static Scalar of_mpq(long chr, mpq_class q);

    // integer fraction n/d reduced into k; rejects d == 0 and, in
    // characteristic p, d == 0 mod p
    static Scalar of_fraction(long chr, long n, long d);

    // parses "p", "-p", "p/q"
    static Scalar parse(long chr, const std::string& s);

    long characteristic() const { return chr_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    const mpq_class& value() const { return v_; }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar inverse() const;

    bool operator==(const Scalar& o) const { return chr_ == o.chr_ && v_ == o.v_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // "p/q" in characteristic 0 (plain "p" when q == 1), the residue in
    // characteristic p
    std::string str() const;

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

  private:
    Scalar(long chr, mpq_class v) : chr_(chr), v_(std::move(v)) { reduce(); }

    void reduce();
    void check_same(const Scalar& o) const {
        if (chr_ != o.chr_)
            throw ring_mismatch("scalar characteristic mismatch");
    }

    long chr_; // 0 or an odd prime
    mpq_class v_;
};

// (1/2 choose j) as an element of k.  Defined for every j >= 0 whenever the
// characteristic is not 2: the value is an integer divided by a power of two
// (Catalan numbers), so no other denominators occur.
Scalar binomial_half(long chr, long j);

// ordinary binomial coefficient reduced into k
Scalar binomial_int(long chr, long n, long j);

} // namespace fieldpatch
