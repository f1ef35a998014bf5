#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fieldpatch/ratfunc.hpp"

namespace fieldpatch {

// Truncated Laurent series in x over k.  An object asserts full knowledge of
// every order below `hi`: orders below `lo` are zero, orders in [lo, hi) are
// stored, and nothing is claimed at or above `hi`.  Exact Laurent
// polynomials carry hi == kExact.  Multiplication uses
//     hi = min(v(a) + hi_b, v(b) + hi_a, hi_a + hi_b)
// so knowledge degrades honestly when factors have poles; an operation that
// would need an order at or above the known bound throws window_error
// instead of inventing coefficients.
class TruncLaurent {
  public:
    static constexpr int kExact = 1 << 28;

    explicit TruncLaurent(long chr = 0) : chr_(chr), hi_(kExact), lo_(0) {}

    // exact zero
    static TruncLaurent zero(long chr) { return TruncLaurent(chr); }
    // zero modulo x^hi: nothing known beyond that
    static TruncLaurent zero_mod(long chr, int hi);
    static TruncLaurent one(long chr) { return exact_monomial(chr, 0, Scalar::one(chr)); }
    static TruncLaurent exact_monomial(long chr, int order, Scalar c);
    // exact Laurent polynomial with coefficients for orders lo, lo+1, ...
    static TruncLaurent exact_laurent(long chr, int lo, std::vector<Scalar> coeffs);
    // window approximation: the same data but only asserted below hi
    static TruncLaurent windowed(long chr, int lo, std::vector<Scalar> coeffs, int hi);

    long characteristic() const { return chr_; }
    int known_to() const { return hi_; }
    bool is_exact() const { return hi_ == kExact; }
    // true when the known part is zero (the tail may still be anything if
    // not exact)
    bool known_zero() const { return c_.empty(); }
    bool is_exact_zero() const { return c_.empty() && is_exact(); }

    // valuation of the known part; throws window_error when the known part
    // is zero but the element is not exactly zero
    int valuation() const;

    // coefficient of x^i; throws window_error for i >= hi
    Scalar coeff(int i) const;
    int lo() const { return lo_; }
    const std::vector<Scalar>& raw() const { return c_; }

    TruncLaurent operator-() const;
    friend TruncLaurent operator+(const TruncLaurent& a, const TruncLaurent& b);
    friend TruncLaurent operator-(const TruncLaurent& a, const TruncLaurent& b);
    friend TruncLaurent operator*(const TruncLaurent& a, const TruncLaurent& b);
    TruncLaurent& operator+=(const TruncLaurent& o) { return *this = *this + o; }
    TruncLaurent& operator-=(const TruncLaurent& o) { return *this = *this - o; }
    TruncLaurent& operator*=(const TruncLaurent& o) { return *this = *this * o; }

    TruncLaurent scaled(const Scalar& s) const;
    // multiply by x^n
    TruncLaurent shifted(int n) const;

    // multiplicative inverse; requires a known nonzero leading coefficient.
    // want_terms controls how far an exact input is expanded (the window of
    // an inexact input is the binding limit).
    TruncLaurent inverse(int want_terms = 0) const;

    // forget everything at or above h
    TruncLaurent truncated(int h) const;

    // part of the element with orders < 0 as an exact Laurent polynomial
    // (requires hi >= 0), and the complementary nonnegative part
    TruncLaurent negative_part() const;
    TruncLaurent nonnegative_part() const;

    bool has_negative_orders() const { return !c_.empty() && lo_ < 0; }

    // the known part as a rational function; meaningful for elements built
    // exactly, used to hand finite Laurent polynomials to exact layers
    RatFunc known_ratfunc() const;

    // true iff everything known below h is zero; requires hi >= h
    bool is_zero_through(int h) const;
    // identical known parts through min(hi_a, hi_b, h)
    friend bool agree_through(const TruncLaurent& a, const TruncLaurent& b, int h);

    bool operator==(const TruncLaurent& o) const {
        return chr_ == o.chr_ && hi_ == o.hi_ && lo_ == o.lo_ && c_ == o.c_;
    }

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const TruncLaurent& t);

  private:
    void normalize();
    void check_same(const TruncLaurent& o) const {
        if (chr_ != o.chr_)
            throw ring_mismatch("laurent characteristic mismatch");
    }

    long chr_;
    int hi_; // exclusive bound of known orders, kExact when exact
    int lo_; // order of c_[0] when c_ nonempty
    std::vector<Scalar> c_;
};

// Laurent expansion of f at x = 0 with window M: all orders below M.  A
// rational function expands exactly to any window, so this never fails; for
// f == 0 the result is the exact zero.
TruncLaurent series_expand(const RatFunc& f, int window);

} // namespace fieldpatch
