#include "fieldpatch/laurent.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace fieldpatch {

namespace {

int sat_add(int a, int b) {
    if (a >= TruncLaurent::kExact || b >= TruncLaurent::kExact)
        return TruncLaurent::kExact;
    return std::max(std::min(a + b, (int)TruncLaurent::kExact), -(int)TruncLaurent::kExact);
}

} // namespace

void TruncLaurent::normalize() {
    size_t drop = 0;
    while (drop < c_.size() && c_[drop].is_zero())
        ++drop;
    if (drop > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(drop));
        lo_ += static_cast<int>(drop);
    }
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
    if (c_.empty())
        lo_ = 0;
    else if (hi_ != kExact && lo_ + static_cast<int>(c_.size()) > hi_)
        c_.resize(hi_ - lo_); // stored data beyond the window is meaningless
    if (c_.empty())
        lo_ = 0;
}

TruncLaurent TruncLaurent::zero_mod(long chr, int hi) {
    TruncLaurent t(chr);
    t.hi_ = hi;
    return t;
}

TruncLaurent TruncLaurent::exact_monomial(long chr, int order, Scalar c) {
    TruncLaurent t(chr);
    if (!c.is_zero()) {
        t.lo_ = order;
        t.c_ = {std::move(c)};
    }
    return t;
}

TruncLaurent TruncLaurent::exact_laurent(long chr, int lo, std::vector<Scalar> coeffs) {
    TruncLaurent t(chr);
    t.lo_ = lo;
    t.c_ = std::move(coeffs);
    t.normalize();
    return t;
}

TruncLaurent TruncLaurent::windowed(long chr, int lo, std::vector<Scalar> coeffs, int hi) {
    TruncLaurent t(chr);
    t.lo_ = lo;
    t.c_ = std::move(coeffs);
    t.hi_ = hi;
    t.normalize();
    return t;
}

int TruncLaurent::valuation() const {
    if (!c_.empty())
        return lo_;
    if (is_exact())
        throw error("valuation of the exact zero series");
    throw window_error("valuation not determined by the known window");
}

Scalar TruncLaurent::coeff(int i) const {
    if (i >= hi_)
        throw window_error("coefficient beyond the known window");
    if (c_.empty() || i < lo_ || i >= lo_ + static_cast<int>(c_.size()))
        return Scalar::zero(chr_);
    return c_[i - lo_];
}

TruncLaurent TruncLaurent::operator-() const {
    TruncLaurent r = *this;
    for (auto& s : r.c_)
        s = -s;
    return r;
}

TruncLaurent operator+(const TruncLaurent& a, const TruncLaurent& b) {
    a.check_same(b);
    TruncLaurent r(a.chr_);
    r.hi_ = std::min(a.hi_, b.hi_);
    if (a.c_.empty() && b.c_.empty())
        return r;
    const int lo = std::min(a.c_.empty() ? b.lo_ : a.lo_, b.c_.empty() ? a.lo_ : b.lo_);
    const int top = std::min(
        r.hi_, std::max(a.lo_ + static_cast<int>(a.c_.size()), b.lo_ + static_cast<int>(b.c_.size())));
    if (top <= lo)
        return r;
    r.lo_ = lo;
    r.c_.assign(top - lo, Scalar::zero(a.chr_));
    for (int i = lo; i < top; ++i) {
        Scalar v = Scalar::zero(a.chr_);
        if (i >= a.lo_ && i < a.lo_ + static_cast<int>(a.c_.size()))
            v += a.c_[i - a.lo_];
        if (i >= b.lo_ && i < b.lo_ + static_cast<int>(b.c_.size()))
            v += b.c_[i - b.lo_];
        r.c_[i - lo] = v;
    }
    r.normalize();
    return r;
}

TruncLaurent operator-(const TruncLaurent& a, const TruncLaurent& b) { return a + (-b); }

TruncLaurent operator*(const TruncLaurent& a, const TruncLaurent& b) {
    a.check_same(b);
    TruncLaurent r(a.chr_);
    const int va = a.c_.empty() ? TruncLaurent::kExact : a.lo_;
    const int vb = b.c_.empty() ? TruncLaurent::kExact : b.lo_;
    r.hi_ = std::min({sat_add(va, b.hi_), sat_add(vb, a.hi_), sat_add(a.hi_, b.hi_)});
    if (a.c_.empty() || b.c_.empty())
        return r;
    r.lo_ = a.lo_ + b.lo_;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Scalar::zero(a.chr_));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero())
            continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.normalize();
    return r;
}

TruncLaurent TruncLaurent::scaled(const Scalar& s) const {
    if (s.is_zero())
        return TruncLaurent(chr_); // exact zero: 0 * unknown tail is still 0
    TruncLaurent r = *this;
    for (auto& v : r.c_)
        v *= s;
    return r;
}

TruncLaurent TruncLaurent::shifted(int n) const {
    TruncLaurent r = *this;
    if (!r.c_.empty())
        r.lo_ += n;
    r.hi_ = sat_add(r.hi_, n);
    return r;
}

TruncLaurent TruncLaurent::inverse(int want_terms) const {
    if (is_exact_zero())
        throw non_unit_error("inverting the zero series");
    if (c_.empty())
        throw window_error("cannot invert: valuation unknown at this window");
    const int v = lo_;
    // u = x^-v * this is a unit known through hi - v terms (counted from 0);
    // an exact input can be expanded as far as the caller asks
    const int terms = hi_ == kExact ? std::max(static_cast<int>(c_.size()), want_terms) : hi_ - v;
    if (terms <= 0)
        throw window_error("cannot invert: no known unit part");
    const Scalar u0inv = c_[0].inverse();
    std::vector<Scalar> inv(static_cast<size_t>(terms), Scalar::zero(chr_));
    inv[0] = u0inv;
    for (int i = 1; i < terms; ++i) {
        Scalar acc = Scalar::zero(chr_);
        for (int k = 1; k <= i; ++k) {
            const Scalar uk = (k < static_cast<int>(c_.size())) ? c_[k] : Scalar::zero(chr_);
            if (!uk.is_zero())
                acc += uk * inv[i - k];
        }
        inv[i] = -(u0inv * acc);
    }
    // an exact monomial inverts exactly; the inverse of any other exact
    // polynomial is an honest infinite series, known only as far as computed
    const int hi = hi_ == kExact ? (c_.size() == 1 ? kExact : sat_add(-v, terms)) : hi_ - 2 * v;
    return windowed(chr_, -v, std::move(inv), hi);
}

TruncLaurent TruncLaurent::truncated(int h) const {
    TruncLaurent r = *this;
    r.hi_ = std::min(hi_, h);
    r.normalize();
    return r;
}

TruncLaurent TruncLaurent::negative_part() const {
    if (hi_ < 0)
        throw window_error("negative part not fully known at this window");
    TruncLaurent r(chr_);
    if (c_.empty() || lo_ >= 0)
        return r;
    const int n = std::min(-lo_, static_cast<int>(c_.size()));
    r.lo_ = lo_;
    r.c_.assign(c_.begin(), c_.begin() + n);
    r.normalize();
    return r;
}

TruncLaurent TruncLaurent::nonnegative_part() const { return *this - negative_part(); }

RatFunc TruncLaurent::known_ratfunc() const {
    if (c_.empty())
        return RatFunc::zero(chr_);
    Poly p(chr_, c_);
    if (lo_ >= 0)
        return RatFunc::of_poly(p.shifted(lo_));
    return RatFunc(p, Poly::monomial(chr_, -lo_, Scalar::one(chr_)));
}

bool TruncLaurent::is_zero_through(int h) const {
    if (hi_ < h)
        throw window_error("zero test beyond the known window");
    return c_.empty() || lo_ >= h;
}

bool agree_through(const TruncLaurent& a, const TruncLaurent& b, int h) {
    const int bound = std::min({a.hi_, b.hi_, h});
    return (a - b).is_zero_through(bound);
}

std::string TruncLaurent::str() const {
    std::ostringstream os;
    if (c_.empty())
        os << "0";
    else {
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero())
                continue;
            if (!first)
                os << " + ";
            first = false;
            const int ord = lo_ + static_cast<int>(i);
            if (ord == 0 || !c_[i].is_one())
                os << c_[i].str() << (ord != 0 ? "*" : "");
            if (ord == 1)
                os << "x";
            else if (ord != 0)
                os << "x^" << ord;
        }
    }
    if (hi_ != kExact)
        os << " + O(x^" << hi_ << ")";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const TruncLaurent& t) { return os << t.str(); }

TruncLaurent series_expand(const RatFunc& f, int window) {
    const long chr = f.characteristic();
    if (f.is_zero())
        return TruncLaurent::zero(chr);
    const int vn = f.num().valuation_x();
    const int vd = f.den().valuation_x();
    const int v = vn - vd;
    if (window <= v)
        return TruncLaurent::zero_mod(chr, window);
    const Poly n0 = poly_exact_div(f.num(), Poly::monomial(chr, vn, Scalar::one(chr)));
    const Poly d0 = poly_exact_div(f.den(), Poly::monomial(chr, vd, Scalar::one(chr)));
    const int terms = window - v;
    const Scalar d0inv = d0.coeff(0).inverse();
    std::vector<Scalar> u(static_cast<size_t>(terms), Scalar::zero(chr));
    for (int i = 0; i < terms; ++i) {
        Scalar acc = n0.coeff(i);
        for (int k = 1; k <= std::min(i, d0.degree()); ++k)
            acc -= d0.coeff(k) * u[i - k];
        u[i] = acc * d0inv;
    }
    // a polynomial over a monomial denominator expands exactly
    const bool exact = d0.degree() == 0 && n0.degree() < terms;
    return exact ? TruncLaurent::exact_laurent(chr, v, std::move(u))
                 : TruncLaurent::windowed(chr, v, std::move(u), window);
}

} // namespace fieldpatch
