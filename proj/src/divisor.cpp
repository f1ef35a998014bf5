#include "fieldpatch/divisor.hpp"

#include <sstream>

namespace fieldpatch {

Place Place::infinity(long chr) { return Place(chr, true, Poly(chr)); }

Place Place::finite(Poly p) {
    if (p.degree() < 1)
        throw input_error("a finite place needs a nonconstant polynomial");
    if (!p.is_monic())
        throw input_error("place polynomial must be monic");
    const long chr = p.characteristic();
    return Place(chr, false, std::move(p));
}

const Poly& Place::poly() const {
    if (inf_)
        throw error("the place at infinity has no polynomial");
    return p_;
}

bool Place::operator==(const Place& o) const {
    if (chr_ != o.chr_ || inf_ != o.inf_)
        return false;
    return inf_ || p_ == o.p_;
}

int Place::order_of(const RatFunc& f) const {
    return inf_ ? f.order_at_infinity() : f.order_at(p_);
}

std::string Place::str() const { return inf_ ? "inf" : p_.str(); }

Divisor& Divisor::add(const Place& p, int mult) {
    if (p.characteristic() != chr_)
        throw ring_mismatch("divisor characteristic mismatch");
    for (auto& [q, m] : t_) {
        if (q == p) {
            m += mult;
            if (m == 0)
                t_.erase(std::find_if(t_.begin(), t_.end(),
                                      [&](const auto& e) { return e.first == p; }));
            return *this;
        }
    }
    if (mult != 0)
        t_.emplace_back(p, mult);
    return *this;
}

int Divisor::degree() const {
    int d = 0;
    for (const auto& [p, m] : t_)
        d += p.degree() * m;
    return d;
}

bool Divisor::is_effective() const {
    for (const auto& [p, m] : t_)
        if (m < 0)
            return false;
    return true;
}

int Divisor::multiplicity_of(const Place& p) const {
    for (const auto& [q, m] : t_)
        if (q == p)
            return m;
    return 0;
}

std::string Divisor::str() const {
    if (t_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, m] : t_) {
        if (!first)
            os << " + ";
        first = false;
        os << m << "*(" << p.str() << ")";
    }
    return os.str();
}

std::vector<RatFunc> rr_basis(const Divisor& d) {
    if (!d.is_effective())
        throw input_error("rr_basis needs an effective divisor");
    const long chr = d.characteristic();
    Poly b = Poly::one(chr);
    int a_inf = 0;
    for (const auto& [p, m] : d.terms()) {
        if (p.at_infinity())
            a_inf = m;
        else
            b *= p.poly().pow(m);
    }
    std::vector<RatFunc> basis;
    const int top = b.degree() + a_inf;
    basis.reserve(static_cast<size_t>(top) + 1);
    for (int j = 0; j <= top; ++j)
        basis.emplace_back(Poly::monomial(chr, j, Scalar::one(chr)), b);
    return basis;
}

} // namespace fieldpatch
