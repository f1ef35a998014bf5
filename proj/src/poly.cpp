#include "fieldpatch/poly.hpp"

#include <ostream>
#include <sstream>

namespace fieldpatch {

Poly::Poly(long chr, std::vector<Scalar> coeffs) : chr_(chr), c_(std::move(coeffs)) {
    for (const auto& s : c_)
        if (s.characteristic() != chr_)
            throw ring_mismatch("coefficient characteristic mismatch");
    trim();
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

Poly Poly::constant(Scalar c) {
    Poly p(c.characteristic());
    if (!c.is_zero())
        p.c_ = {std::move(c)};
    return p;
}

Poly Poly::monomial(long chr, int n, Scalar c) {
    Poly p(chr);
    if (c.is_zero())
        return p;
    p.c_.assign(n, Scalar::zero(chr));
    p.c_.push_back(std::move(c));
    return p;
}

Poly Poly::of_ints(long chr, std::initializer_list<long> cs) {
    std::vector<Scalar> v;
    v.reserve(cs.size());
    for (long n : cs)
        v.push_back(Scalar::of_int(chr, n));
    return Poly(chr, std::move(v));
}

Scalar Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size()))
        return Scalar::zero(chr_);
    return c_[i];
}

Scalar Poly::lead() const {
    if (c_.empty())
        return Scalar::zero(chr_);
    return c_.back();
}

int Poly::valuation_x() const {
    if (c_.empty())
        throw error("valuation of the zero polynomial");
    for (int i = 0;; ++i)
        if (!c_[i].is_zero())
            return i;
}

Poly Poly::operator-() const {
    Poly r(chr_);
    r.c_.reserve(c_.size());
    for (const auto& s : c_)
        r.c_.push_back(-s);
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    a.check_same(b);
    Poly r(a.chr_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), Scalar::zero(a.chr_));
    for (size_t i = 0; i < r.c_.size(); ++i) {
        Scalar v = Scalar::zero(a.chr_);
        if (i < a.c_.size())
            v += a.c_[i];
        if (i < b.c_.size())
            v += b.c_[i];
        r.c_[i] = v;
    }
    r.trim();
    return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    a.check_same(b);
    Poly r(a.chr_);
    if (a.is_zero() || b.is_zero())
        return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Scalar::zero(a.chr_));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero())
            continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
}

Poly Poly::scaled(const Scalar& s) const {
    Poly r(chr_);
    if (s.is_zero())
        return r;
    r.c_.reserve(c_.size());
    for (const auto& v : c_)
        r.c_.push_back(v * s);
    return r;
}

Poly Poly::shifted(int n) const {
    if (is_zero())
        return *this;
    Poly r(chr_);
    r.c_.assign(n, Scalar::zero(chr_));
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
}

Poly Poly::pow(int n) const {
    Poly r = Poly::one(chr_);
    for (int i = 0; i < n; ++i)
        r *= *this;
    return r;
}

Scalar Poly::eval(const Scalar& at) const {
    Scalar acc = Scalar::zero(chr_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * at + *it;
    return acc;
}

Poly Poly::derivative() const {
    Poly r(chr_);
    for (size_t i = 1; i < c_.size(); ++i)
        r.c_.push_back(c_[i] * Scalar::of_int(chr_, static_cast<long>(i)));
    r.trim();
    return r;
}

Poly Poly::monic() const {
    if (is_zero())
        return *this;
    return scaled(lead().inverse());
}

std::string Poly::str() const {
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Scalar s = coeff(i);
        if (s.is_zero())
            continue;
        if (!first)
            os << " + ";
        first = false;
        if (i == 0 || !s.is_one())
            os << s.str() << (i > 0 ? "*" : "");
        if (i == 1)
            os << "x";
        else if (i > 1)
            os << "x^" << i;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

PolyDivRem poly_divrem(const Poly& a, const Poly& b) {
    if (b.is_zero())
        throw non_unit_error("polynomial division by zero");
    const long chr = a.characteristic();
    if (chr != b.characteristic())
        throw ring_mismatch("polynomial characteristic mismatch");
    const int da = a.degree(), db = b.degree();
    if (a.is_zero() || da < db)
        return {Poly(chr), a};
    const Scalar binv = b.lead().inverse();
    std::vector<Scalar> r = a.coeffs();
    std::vector<Scalar> q(static_cast<size_t>(da - db) + 1, Scalar::zero(chr));
    const auto& bc = b.coeffs();
    for (int k = da - db; k >= 0; --k) {
        Scalar c = r[static_cast<size_t>(k + db)] * binv;
        if (c.is_zero())
            continue;
        for (int i = 0; i < db; ++i)
            r[static_cast<size_t>(k + i)] -= c * bc[static_cast<size_t>(i)];
        r[static_cast<size_t>(k + db)] = Scalar::zero(chr);
        q[static_cast<size_t>(k)] = std::move(c);
    }
    r.resize(static_cast<size_t>(db));
    return {Poly(chr, std::move(q)), Poly(chr, std::move(r))};
}

Poly poly_exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = poly_divrem(a, b);
    if (!r.is_zero())
        throw error("inexact polynomial division");
    return q;
}

PolyXgcd poly_xgcd(const Poly& a, const Poly& b) {
    const long chr = a.characteristic();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::one(chr), s1 = Poly::zero(chr);
    Poly t0 = Poly::zero(chr), t1 = Poly::one(chr);
    // each remainder is rescaled to monic right away (the Bezout identity
    // survives uniform scaling); over the rationals the raw remainder
    // sequence explodes exponentially without this
    if (!r1.is_zero()) {
        const Scalar inv = r1.lead().inverse();
        r1 = r1.scaled(inv);
        t1 = t1.scaled(inv);
    }
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divrem(r0, r1);
        Poly s2 = s0 - q * s1;
        Poly t2 = t0 - q * t1;
        if (!r2.is_zero()) {
            const Scalar inv = r2.lead().inverse();
            r2 = r2.scaled(inv);
            s2 = s2.scaled(inv);
            t2 = t2.scaled(inv);
        }
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if (r0.is_zero())
        return {r0, s0, t0};
    const Scalar inv = r0.lead().inverse();
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

namespace {

void trim_z(std::vector<mpz_class>& v) {
    while (!v.empty() && v.back() == 0)
        v.pop_back();
}

// clear denominators and strip integer content
std::vector<mpz_class> primitive_z(const Poly& p) {
    mpz_class den(1);
    for (const auto& c : p.coeffs())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.value().get_den().get_mpz_t());
    std::vector<mpz_class> v;
    v.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs())
        v.push_back(mpz_class(c.value().get_num() * (den / c.value().get_den())));
    mpz_class content(0);
    for (const auto& z : v)
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z.get_mpz_t());
    if (content > 1)
        for (auto& z : v)
            mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), content.get_mpz_t());
    return v;
}

// gcd over Q[x] via the primitive pseudo-remainder sequence over Z[x]: the
// monic Euclidean sequence piles up rational coefficient length step after
// step, while content stripping keeps integer remainders near their minimal
// size.  Returns the monic rational gcd.
Poly gcd_rational(const Poly& pa, const Poly& pb) {
    std::vector<mpz_class> a = primitive_z(pa);
    std::vector<mpz_class> b = primitive_z(pb);
    if (a.size() < b.size())
        std::swap(a, b);
    while (!b.empty()) {
        const mpz_class lb = b.back();
        const int db = static_cast<int>(b.size()) - 1;
        while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
            const mpz_class la = a.back();
            const int k = static_cast<int>(a.size()) - 1 - db;
            for (auto& c : a)
                c *= lb;
            for (int i = 0; i <= db; ++i)
                a[static_cast<size_t>(k + i)] -= la * b[static_cast<size_t>(i)];
            trim_z(a);
        }
        mpz_class content(0);
        for (const auto& c : a)
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
        if (content > 1)
            for (auto& c : a)
                mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
        std::swap(a, b);
    }
    if (a.empty())
        return Poly(0);
    std::vector<Scalar> out;
    out.reserve(a.size());
    const mpz_class& lead = a.back();
    for (const auto& c : a) {
        mpq_class q(c, lead);
        q.canonicalize();
        out.push_back(Scalar::of_mpq(0, std::move(q)));
    }
    return Poly(0, std::move(out));
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.characteristic() != b.characteristic())
        throw ring_mismatch("polynomial characteristic mismatch");
    if (a.is_zero())
        return b.is_zero() ? b : b.monic();
    if (b.is_zero())
        return a.monic();
    if (a.characteristic() == 0)
        return gcd_rational(a, b);
    Poly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        r1 = r1.monic();
        auto [q, r2] = poly_divrem(r0, r1);
        (void)q;
        r0 = r1;
        r1 = r2;
    }
    return r0.monic();
}

int poly_multiplicity(const Poly& a, const Poly& d) {
    if (a.is_zero())
        throw error("multiplicity in the zero polynomial");
    if (d.is_constant())
        throw error("multiplicity of a constant");
    int m = 0;
    Poly r = a;
    for (;;) {
        auto [q, rem] = poly_divrem(r, d);
        if (!rem.is_zero())
            return m;
        r = q;
        ++m;
    }
}

} // namespace fieldpatch
