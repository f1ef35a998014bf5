#include "fieldpatch/rings.hpp"

#include <algorithm>
#include <sstream>

#include "fieldpatch/partialfrac.hpp"

namespace fieldpatch {

namespace {

// strip from a every factor it shares with q, completely
Poly remove_common(Poly a, const Poly& q) {
    if (a.is_constant() || q.is_constant())
        return a;
    for (;;) {
        const Poly g = poly_gcd(a, q);
        if (g.degree() < 1)
            return a;
        a = poly_exact_div(a, g);
    }
}

// the largest factor of a supported on the zero set of q
Poly common_part(const Poly& a, const Poly& q) { return poly_exact_div(a, remove_common(a, q)); }

bool place_less(const Place& a, const Place& b) {
    if (a.at_infinity() != b.at_infinity())
        return b.at_infinity();
    if (a.at_infinity())
        return false;
    if (a.poly().degree() != b.poly().degree())
        return a.poly().degree() < b.poly().degree();
    return a.poly().str() < b.poly().str();
}

} // namespace

PatchSet::PatchSet(long chr, Kind k, std::vector<Place> pl)
    : chr_(chr), kind_(k), places_(std::move(pl)) {
    int infs = 0;
    for (const auto& p : places_) {
        if (p.characteristic() != chr_)
            throw ring_mismatch("place characteristic mismatch");
        if (p.at_infinity())
            ++infs;
    }
    if (infs > 1)
        throw input_error("the place at infinity listed twice");
    for (size_t i = 0; i < places_.size(); ++i)
        for (size_t j = i + 1; j < places_.size(); ++j)
            if (!places_[i].at_infinity() && !places_[j].at_infinity() &&
                poly_gcd(places_[i].poly(), places_[j].poly()).degree() > 0)
                throw input_error("place polynomials must be pairwise coprime");
    std::sort(places_.begin(), places_.end(), place_less);
}

PatchSet PatchSet::cofinite(long chr, std::vector<Place> excluded) {
    return PatchSet(chr, Kind::Cofinite, std::move(excluded));
}

PatchSet PatchSet::finite(long chr, std::vector<Place> included) {
    return PatchSet(chr, Kind::Finite, std::move(included));
}

Poly PatchSet::finite_product() const {
    Poly p = Poly::one(chr_);
    for (const auto& pl : places_)
        if (!pl.at_infinity())
            p *= pl.poly();
    return p;
}

bool PatchSet::contains_infinity() const {
    const bool listed = std::any_of(places_.begin(), places_.end(),
                                    [](const Place& p) { return p.at_infinity(); });
    return kind_ == Kind::Cofinite ? !listed : listed;
}

bool PatchSet::contains_zero_set_of(const Poly& p) const {
    if (p.degree() < 1)
        return true;
    if (kind_ == Kind::Cofinite)
        return poly_gcd(p, finite_product()).degree() == 0;
    return remove_common(p, finite_product()).degree() == 0;
}

bool PatchSet::meets_zero_set_of(const Poly& p) const {
    if (p.degree() < 1)
        return false;
    if (kind_ == Kind::Cofinite)
        return remove_common(p, finite_product()).degree() > 0;
    return poly_gcd(p, finite_product()).degree() > 0;
}

bool PatchSet::admits(const RatFunc& f) const {
    if (f.is_zero())
        return true;
    // pole at a finite point of U?
    if (meets_zero_set_of(f.den()))
        return false;
    // pole at infinity while infinity is in U?
    if (contains_infinity() && f.num().degree() > f.den().degree())
        return false;
    return true;
}

bool PatchSet::admits_as_unit(const RatFunc& f) const {
    return !f.is_zero() && admits(f) && admits(f.inverse());
}

PatchSet PatchSet::intersect(const PatchSet& a, const PatchSet& b) {
    if (a.chr_ != b.chr_)
        throw ring_mismatch("patch set characteristic mismatch");
    const long chr = a.chr_;
    const bool inf = a.contains_infinity() && b.contains_infinity();
    auto with_inf = [&](Kind k, std::vector<Poly> polys) {
        std::vector<Place> pl;
        for (auto& p : gcd_free_basis(std::move(polys)))
            pl.push_back(Place::finite(p));
        const bool listed = (k == Kind::Cofinite) ? !inf : inf;
        if (listed)
            pl.push_back(Place::infinity(chr));
        return PatchSet(chr, k, std::move(pl));
    };

    if (a.kind_ == Kind::Cofinite && b.kind_ == Kind::Cofinite) {
        // exclude the union of the excluded sets
        std::vector<Poly> polys;
        for (const auto& s : {a.places_, b.places_})
            for (const auto& p : s)
                if (!p.at_infinity())
                    polys.push_back(p.poly());
        return with_inf(Kind::Cofinite, std::move(polys));
    }
    if (a.kind_ == Kind::Finite && b.kind_ == Kind::Finite) {
        // common points of the two products
        std::vector<Poly> polys;
        const Poly pb = b.finite_product();
        for (const auto& p : a.places_)
            if (!p.at_infinity()) {
                const Poly c = common_part(p.poly(), pb);
                if (c.degree() > 0)
                    polys.push_back(c);
            }
        return with_inf(Kind::Finite, std::move(polys));
    }
    const PatchSet& fin = a.kind_ == Kind::Finite ? a : b;
    const PatchSet& cof = a.kind_ == Kind::Finite ? b : a;
    // points of fin not excluded by cof
    std::vector<Poly> polys;
    const Poly z = cof.finite_product();
    for (const auto& p : fin.places_)
        if (!p.at_infinity()) {
            const Poly keep = remove_common(p.poly(), z);
            if (keep.degree() > 0)
                polys.push_back(keep);
        }
    return with_inf(Kind::Finite, std::move(polys));
}

PatchSet PatchSet::unite(const PatchSet& a, const PatchSet& b) {
    if (a.chr_ != b.chr_)
        throw ring_mismatch("patch set characteristic mismatch");
    const long chr = a.chr_;
    const bool inf = a.contains_infinity() || b.contains_infinity();
    auto with_inf = [&](Kind k, std::vector<Poly> polys) {
        std::vector<Place> pl;
        for (auto& p : gcd_free_basis(std::move(polys)))
            pl.push_back(Place::finite(p));
        const bool listed = (k == Kind::Cofinite) ? !inf : inf;
        if (listed)
            pl.push_back(Place::infinity(chr));
        return PatchSet(chr, k, std::move(pl));
    };

    if (a.kind_ == Kind::Cofinite && b.kind_ == Kind::Cofinite) {
        // exclude only points excluded by both
        std::vector<Poly> polys;
        const Poly pb = b.finite_product();
        for (const auto& p : a.places_)
            if (!p.at_infinity()) {
                const Poly c = common_part(p.poly(), pb);
                if (c.degree() > 0)
                    polys.push_back(c);
            }
        return with_inf(Kind::Cofinite, std::move(polys));
    }
    if (a.kind_ == Kind::Finite && b.kind_ == Kind::Finite) {
        std::vector<Poly> polys;
        for (const auto& s : {a.places_, b.places_})
            for (const auto& p : s)
                if (!p.at_infinity())
                    polys.push_back(p.poly());
        return with_inf(Kind::Finite, std::move(polys));
    }
    const PatchSet& fin = a.kind_ == Kind::Finite ? a : b;
    const PatchSet& cof = a.kind_ == Kind::Finite ? b : a;
    // exclude the cofinite side's excluded points that fin does not add back
    std::vector<Poly> polys;
    const Poly s = fin.finite_product();
    for (const auto& p : cof.places_)
        if (!p.at_infinity()) {
            const Poly keep = remove_common(p.poly(), s);
            if (keep.degree() > 0)
                polys.push_back(keep);
        }
    return with_inf(Kind::Cofinite, std::move(polys));
}

PatchSet PatchSet::minus(const PatchSet& a, const PatchSet& b) {
    if (a.chr_ != b.chr_)
        throw ring_mismatch("patch set characteristic mismatch");
    const long chr = a.chr_;
    const bool inf = a.contains_infinity() && !b.contains_infinity();
    auto with_inf = [&](Kind k, std::vector<Poly> polys) {
        std::vector<Place> pl;
        for (auto& p : gcd_free_basis(std::move(polys)))
            pl.push_back(Place::finite(p));
        const bool listed = (k == Kind::Cofinite) ? !inf : inf;
        if (listed)
            pl.push_back(Place::infinity(chr));
        return PatchSet(chr, k, std::move(pl));
    };

    if (a.kind_ == Kind::Finite) {
        std::vector<Poly> polys;
        for (const auto& p : a.places_)
            if (!p.at_infinity()) {
                // keep the part of p outside b
                Poly keep = b.kind_ == Kind::Finite ? remove_common(p.poly(), b.finite_product())
                                                    : common_part(p.poly(), b.finite_product());
                if (keep.degree() > 0)
                    polys.push_back(keep);
            }
        return with_inf(Kind::Finite, std::move(polys));
    }
    if (b.kind_ == Kind::Finite) {
        // cofinite minus finite: exclude b's points too
        std::vector<Poly> polys;
        for (const auto& p : a.places_)
            if (!p.at_infinity())
                polys.push_back(p.poly());
        for (const auto& p : b.places_)
            if (!p.at_infinity())
                polys.push_back(p.poly());
        return with_inf(Kind::Cofinite, std::move(polys));
    }
    // cofinite minus cofinite: points of b's excluded set not excluded by a
    std::vector<Poly> polys;
    const Poly za = a.finite_product();
    for (const auto& p : b.places_)
        if (!p.at_infinity()) {
            const Poly keep = remove_common(p.poly(), za);
            if (keep.degree() > 0)
                polys.push_back(keep);
        }
    return with_inf(Kind::Finite, std::move(polys));
}

bool PatchSet::disjoint(const PatchSet& a, const PatchSet& b) {
    if (a.kind_ == Kind::Cofinite && b.kind_ == Kind::Cofinite)
        return false; // two cofinite sets always share a point
    return intersect(a, b).is_empty_set();
}

bool PatchSet::subset(const PatchSet& a, const PatchSet& b) {
    if (a.kind_ == Kind::Cofinite && b.kind_ == Kind::Finite)
        return false;
    return intersect(a, b) == a;
}

bool PatchSet::operator==(const PatchSet& o) const {
    if (chr_ != o.chr_ || kind_ != o.kind_)
        return false;
    if (contains_infinity() != o.contains_infinity())
        return false;
    // same finite point sets: products generate each other
    const Poly pa = finite_product();
    const Poly pb = o.finite_product();
    return remove_common(pa, pb).degree() == 0 && remove_common(pb, pa).degree() == 0;
}

std::string PatchSet::str() const {
    std::ostringstream os;
    if (is_full())
        return "P1";
    if (is_empty_set())
        return "{}";
    os << (kind_ == Kind::Cofinite ? "P1 - {" : "{");
    bool first = true;
    for (const auto& p : places_) {
        if (!first)
            os << ", ";
        first = false;
        os << p.str();
    }
    os << "}";
    return os.str();
}

struct RingId::Desc {
    bool global;
    long chr;
    std::optional<PatchSet> u;
    LocalRing lr = LocalRing::R0;
};

RingId RingId::global(PatchSet u) {
    auto d = std::make_shared<Desc>();
    d->global = true;
    d->chr = u.characteristic();
    d->u = std::move(u);
    return RingId(std::move(d));
}

RingId RingId::local(long chr, LocalRing which) {
    auto d = std::make_shared<Desc>();
    d->global = false;
    d->chr = chr;
    d->lr = which;
    return RingId(std::move(d));
}

bool RingId::is_global() const { return d_->global; }
bool RingId::is_local() const { return !d_->global; }
long RingId::characteristic() const { return d_->chr; }

const PatchSet& RingId::patch() const {
    if (!d_->global)
        throw error("local ring has no patch set");
    return *d_->u;
}

LocalRing RingId::local_kind() const {
    if (d_->global)
        throw error("global ring has no local kind");
    return d_->lr;
}

bool RingId::laurent_coeffs() const {
    return !d_->global && (d_->lr == LocalRing::R1 || d_->lr == LocalRing::R0);
}

bool RingId::admits(const RatFunc& c) const {
    if (c.characteristic() != d_->chr)
        return false;
    if (d_->global)
        return d_->u->admits(c);
    switch (d_->lr) {
    case LocalRing::R:
        return c.is_zero() || !c.den().coeff(0).is_zero();
    case LocalRing::R2:
        return true;
    default:
        return false; // R1/R0 take Laurent coefficients
    }
}

bool RingId::admits(const TruncLaurent& c) const {
    if (c.characteristic() != d_->chr || !laurent_coeffs())
        return false;
    if (d_->lr == LocalRing::R0)
        return true;
    // R1: nothing below order 0 may be known-nonzero, and the window must
    // not leave negative orders undetermined
    return !c.has_negative_orders() && (c.known_zero() ? c.known_to() >= 0 : true);
}

bool RingId::unit_residue(const RatFunc& c) const {
    if (c.is_zero())
        return false;
    if (d_->global)
        return d_->u->admits_as_unit(c);
    switch (d_->lr) {
    case LocalRing::R:
        return !c.den().coeff(0).is_zero() && !c.num().coeff(0).is_zero();
    case LocalRing::R2:
        return true;
    default:
        return false;
    }
}

bool RingId::unit_residue(const TruncLaurent& c) const {
    if (!laurent_coeffs() || c.known_zero())
        return false;
    if (d_->lr == LocalRing::R0)
        return true;
    return c.valuation() == 0;
}

bool RingId::operator==(const RingId& o) const {
    if (d_ == o.d_)
        return true;
    if (d_->global != o.d_->global || d_->chr != o.d_->chr)
        return false;
    if (d_->global)
        return *d_->u == *o.d_->u;
    return d_->lr == o.d_->lr;
}

std::string RingId::str() const {
    if (d_->global)
        return "series over regular functions on " + d_->u->str();
    switch (d_->lr) {
    case LocalRing::R:
        return "R: k[x] at (x), then t-series";
    case LocalRing::R1:
        return "R1: k[[x,t]]";
    case LocalRing::R2:
        return "R2: k(x)[[t]]";
    default:
        return "R0: k((x))[[t]]";
    }
}

bool embeddable(const RingId& from, const RingId& into) {
    if (from.characteristic() != into.characteristic())
        return false;
    if (from == into)
        return true;
    const long chr = from.characteristic();
    const Poly x = Poly::x(chr);
    if (from.is_global() && into.is_global())
        return PatchSet::subset(into.patch(), from.patch());
    if (from.is_global()) {
        const bool at0 = from.patch().contains_zero_set_of(x);
        // R and R1 need every coefficient regular at x = 0, which the patch
        // set only guarantees when it contains the point 0
        switch (into.local_kind()) {
        case LocalRing::R:
        case LocalRing::R1:
            return at0;
        case LocalRing::R2:
        case LocalRing::R0:
            return true;
        }
    }
    if (into.is_global()) {
        // local R is the ring at the point 0; R2 is the generic model
        if (from.local_kind() == LocalRing::R)
            return PatchSet::subset(into.patch(), PatchSet::finite(chr, {Place::finite(x)}));
        if (from.local_kind() == LocalRing::R2)
            return into.patch().is_empty_set();
        return false;
    }
    switch (from.local_kind()) {
    case LocalRing::R:
        return true; // R -> R1, R2, R0
    case LocalRing::R1:
    case LocalRing::R2:
        return into.local_kind() == LocalRing::R0;
    case LocalRing::R0:
        return false;
    }
    return false;
}

} // namespace fieldpatch
