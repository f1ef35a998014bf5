#include "fieldpatch/scalar.hpp"

#include <ostream>

namespace fieldpatch {

namespace {

mpz_class mod_p(const mpz_class& z, long p) {
    mpz_class r = z % p;
    if (r < 0)
        r += p;
    return r;
}

} // namespace

void Scalar::reduce() {
    v_.canonicalize();
    if (chr_ == 0)
        return;
    // residue of num/den mod p
    mpz_class den = v_.get_den();
    mpz_class num = mod_p(v_.get_num(), chr_);
    if (den != 1) {
        mpz_class d = mod_p(den, chr_);
        mpz_class dinv;
        if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), mpz_class(chr_).get_mpz_t()) == 0)
            throw non_unit_error("denominator divisible by the characteristic");
        num = mod_p(num * dinv, chr_);
    }
    v_ = mpq_class(num);
}

Scalar Scalar::of_mpq(long chr, mpq_class q) { return Scalar(chr, std::move(q)); }

Scalar Scalar::of_fraction(long chr, long n, long d) {
    if (d == 0)
        throw non_unit_error("zero denominator");
    return Scalar(chr, mpq_class(n, d));
}

Scalar Scalar::parse(long chr, const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw input_error("bad scalar literal: " + s);
    if (q.get_den() == 0)
        throw input_error("zero denominator in scalar literal: " + s);
    return Scalar(chr, std::move(q));
}

Scalar Scalar::operator-() const { return Scalar(chr_, -v_); }

Scalar& Scalar::operator+=(const Scalar& o) {
    check_same(o);
    v_ += o.v_;
    reduce();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    check_same(o);
    v_ -= o.v_;
    reduce();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    check_same(o);
    v_ *= o.v_;
    reduce();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    *this *= o.inverse();
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero())
        throw non_unit_error("scalar division by zero");
    if (chr_ == 0)
        return Scalar(0, 1 / v_);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), v_.get_num().get_mpz_t(), mpz_class(chr_).get_mpz_t());
    return Scalar(chr_, mpq_class(inv));
}

std::string Scalar::str() const { return v_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.v_; }

Scalar binomial_half(long chr, long j) {
    if (chr == 2)
        throw non_unit_error("binomial_half needs characteristic != 2");
    if (j < 0)
        return Scalar::zero(chr);
    if (j == 0)
        return Scalar::one(chr);
    // (1/2 choose j) = (-1)^(j+1) * Catalan(j-1) / 2^(2j-1), computed as an
    // exact integer over a power of two and only then reduced into k, so the
    // value exists in F_p even when j >= p.
    mpz_class cat;
    mpz_bin_uiui(cat.get_mpz_t(), 2 * (j - 1), j - 1);
    cat /= (j); // Catalan(j-1) = C(2j-2, j-1)/j, exact
    mpz_class pow2 = 1;
    pow2 <<= (2 * j - 1);
    mpq_class q(cat, pow2);
    if (j % 2 == 0)
        q = -q;
    return Scalar::of_mpq(chr, q);
}

Scalar binomial_int(long chr, long n, long j) {
    if (j < 0 || j > n)
        return Scalar::zero(chr);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, j);
    return Scalar::of_mpq(chr, mpq_class(b));
}

} // namespace fieldpatch
