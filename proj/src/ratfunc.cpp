#include "fieldpatch/ratfunc.hpp"

#include <ostream>

namespace fieldpatch {

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.characteristic() != den_.characteristic())
        throw ring_mismatch("rational function characteristic mismatch");
    if (den_.is_zero())
        throw non_unit_error("zero denominator");
    reduce();
}

RatFunc::RatFunc(canonical_tag, Poly num, Poly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (num_.is_zero())
        den_ = Poly::one(characteristic());
}

RatFunc RatFunc::of_poly(Poly p) {
    const long chr = p.characteristic();
    return RatFunc(canonical_tag{}, std::move(p), Poly::one(chr));
}

void RatFunc::reduce() {
    if (num_.is_zero()) {
        den_ = Poly::one(characteristic());
        return;
    }
    const Poly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = poly_exact_div(num_, g);
        den_ = poly_exact_div(den_, g);
    }
    const Scalar lead = den_.lead();
    if (!lead.is_one()) {
        const Scalar inv = lead.inverse();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

// Both operands are canonical, so the cross-reduction identities apply: for
// a/b + c/d with g = gcd(b, d), b = g b', d = g d', the sum is
// (a d' + c b') / (b' d' g) and the only surviving common factor sits inside
// g.  This keeps gcd work proportional to the shared denominator structure
// instead of the full product degree.
RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.characteristic() != b.characteristic())
        throw ring_mismatch("rational function characteristic mismatch");
    const Poly g = poly_gcd(a.den_, b.den_);
    if (g.degree() == 0)
        return RatFunc(RatFunc::canonical_tag{},
                       a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    const Poly bp = poly_exact_div(a.den_, g);
    const Poly dp = poly_exact_div(b.den_, g);
    Poly t = a.num_ * dp + b.num_ * bp;
    if (t.is_zero())
        return RatFunc::zero(a.characteristic());
    const Poly h = poly_gcd(t, g);
    Poly den = bp * dp;
    if (h.degree() > 0) {
        t = poly_exact_div(t, h);
        den = den * poly_exact_div(g, h);
    } else {
        den = den * g;
    }
    return RatFunc(RatFunc::canonical_tag{}, std::move(t), std::move(den));
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.characteristic() != b.characteristic())
        throw ring_mismatch("rational function characteristic mismatch");
    if (a.is_zero() || b.is_zero())
        return RatFunc::zero(a.characteristic());
    const Poly g1 = poly_gcd(a.num_, b.den_);
    const Poly g2 = poly_gcd(b.num_, a.den_);
    const Poly n1 = g1.degree() ? poly_exact_div(a.num_, g1) : a.num_;
    const Poly n2 = g2.degree() ? poly_exact_div(b.num_, g2) : b.num_;
    const Poly d1 = g2.degree() ? poly_exact_div(a.den_, g2) : a.den_;
    const Poly d2 = g1.degree() ? poly_exact_div(b.den_, g1) : b.den_;
    return RatFunc(RatFunc::canonical_tag{}, n1 * n2, d1 * d2);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::inverse() const {
    if (is_zero())
        throw non_unit_error("inverting the zero rational function");
    const Scalar inv = num_.lead().inverse();
    return RatFunc(canonical_tag{}, den_.scaled(inv), num_.scaled(inv));
}

int RatFunc::order_at(const Poly& place) const {
    if (is_zero())
        throw error("order of the zero function");
    return poly_multiplicity(num_, place) - poly_multiplicity(den_, place);
}

int RatFunc::order_at_infinity() const {
    if (is_zero())
        throw error("order of the zero function");
    return den_.degree() - num_.degree();
}

std::optional<Scalar> RatFunc::eval(const Scalar& at) const {
    const Scalar d = den_.eval(at);
    if (d.is_zero())
        return std::nullopt;
    return num_.eval(at) / d;
}

RatFunc RatFunc::derivative() const {
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

std::string RatFunc::str() const {
    if (is_polynomial())
        return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.str(); }

} // namespace fieldpatch
