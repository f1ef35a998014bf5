#include "fieldpatch/splitting.hpp"

#include "fieldpatch/pade.hpp"
#include "fieldpatch/partialfrac.hpp"

namespace fieldpatch {

void GlobalSplitContext::validate() const {
    if (u1.characteristic() != u2.characteristic())
        throw ring_mismatch("split context mixes characteristics");
    if (u1.is_full() || u2.is_full())
        throw input_error("split context needs proper subsets of the line");
    if (!PatchSet::disjoint(u1, u2))
        throw input_error("split context sets overlap: " + u1.str() + " and " + u2.str());
    if (pole_budget < 0)
        throw input_error("negative pole budget");
    if (pole_budget > 0 && !pole)
        throw input_error("pole budget without a pole place");
    if (pole) {
        if (pole->characteristic() != u1.characteristic())
            throw ring_mismatch("pole place characteristic mismatch");
        const bool inside = pole->at_infinity() ? u1.contains_infinity()
                                                : u1.contains_zero_set_of(pole->poly());
        if (!inside)
            throw input_error("pole place " + pole->str() + " lies outside " + u1.str());
    }
}

namespace {

bool divides(const Poly& d, const Poly& a) { return poly_divrem(a, d).rem.is_zero(); }

// polynomial part split at the given degree: (degree <= cut, rest)
std::pair<Poly, Poly> degree_split(const Poly& p, int cut) {
    const long chr = p.characteristic();
    std::vector<Scalar> lo, hi;
    const auto& cs = p.coeffs();
    for (size_t i = 0; i < cs.size(); ++i)
        (static_cast<int>(i) <= cut ? lo : hi).push_back(cs[i]);
    Poly low(chr, std::move(lo));
    Poly high = hi.empty() ? Poly::zero(chr)
                           : Poly(chr, std::move(hi)).shifted(cut + 1);
    return {std::move(low), std::move(high)};
}

} // namespace

RatSplit split_mod_t_global(const RatFunc& a, const GlobalSplitContext& ctx) {
    const long chr = ctx.u1.characteristic();
    if (a.characteristic() != chr)
        throw ring_mismatch("split input characteristic mismatch");
    if (a.is_zero())
        return {RatFunc::zero(chr), RatFunc::zero(chr)};

    // refine the denominator against both patch descriptions (and the
    // budget place) so every resulting modulus lies wholly inside or wholly
    // outside each set
    std::vector<Poly> gens{a.den()};
    for (const Place& p : ctx.u1.places())
        if (!p.at_infinity())
            gens.push_back(p.poly());
    for (const Place& p : ctx.u2.places())
        if (!p.at_infinity())
            gens.push_back(p.poly());
    if (ctx.pole && !ctx.pole->at_infinity())
        gens.push_back(ctx.pole->poly());
    const std::vector<Poly> basis = gcd_free_basis(std::move(gens));
    const PartialFractions pf = partial_fractions(a, basis);

    RatFunc b = RatFunc::zero(chr);
    RatFunc c = RatFunc::zero(chr);

    for (const auto& part : pf.parts) {
        if (part.numer.is_zero())
            continue;
        if (!ctx.u1.contains_zero_set_of(part.modulus)) {
            // a U2 place or an unconstrained one: the b side by convention
            b += RatFunc(part.numer, part.modulus.pow(part.exp));
            continue;
        }
        const bool budgeted = ctx.pole && !ctx.pole->at_infinity() && ctx.pole_budget > 0 &&
                              divides(part.modulus, ctx.pole->poly());
        if (!budgeted) {
            c += RatFunc(part.numer, part.modulus.pow(part.exp));
            continue;
        }
        // base-modulus digits of the numerator give the order-i pieces; the
        // order-<=budget pole at P is b's allowance
        Poly cur = part.numer;
        for (int i = part.exp; i >= 1 && !cur.is_zero(); --i) {
            PolyDivRem dr = poly_divrem(cur, part.modulus);
            if (!dr.rem.is_zero()) {
                RatFunc piece(dr.rem, part.modulus.pow(i));
                (i <= ctx.pole_budget ? b : c) += piece;
            }
            cur = std::move(dr.quot);
        }
    }

    // the polynomial part: constants go to b; the degree >= 1 piece is the
    // principal part at infinity
    if (!pf.polypart.is_zero()) {
        auto [constant, high] = degree_split(pf.polypart, 0);
        b += RatFunc::of_poly(constant);
        if (!high.is_zero()) {
            if (!ctx.u1.contains_infinity())
                b += RatFunc::of_poly(high);
            else if (ctx.pole && ctx.pole->at_infinity() && ctx.pole_budget > 0) {
                auto [keep, move] = degree_split(pf.polypart, ctx.pole_budget);
                b += RatFunc::of_poly(keep) - RatFunc::of_poly(constant);
                c += RatFunc::of_poly(move);
            } else
                c += RatFunc::of_poly(high);
        }
    }

    // re-check the advertised postconditions before handing the pair out
    if (!(b + c == a))
        throw error("internal: additive split does not re-sum exactly");
    if (!c.is_zero()) {
        for (const Poly& q : basis)
            if (c.order_at(q) < 0 && !ctx.u1.contains_zero_set_of(q))
                throw error("internal: split c side has a pole outside the first set");
        if (c.order_at_infinity() < 0 && !ctx.u1.contains_infinity())
            throw error("internal: split c side has a pole at infinity");
        if (!ctx.u2.admits(c))
            throw error("internal: split c side not regular on the second set");
    }
    if (!b.is_zero()) {
        for (const Poly& q : basis) {
            if (b.order_at(q) >= 0 || !ctx.u1.contains_zero_set_of(q))
                continue;
            const bool allowed = ctx.pole && !ctx.pole->at_infinity() &&
                                 divides(q, ctx.pole->poly()) &&
                                 b.order_at(q) >= -ctx.pole_budget;
            if (!allowed)
                throw error("internal: split b side has an unbudgeted pole on the first set");
        }
        if (b.order_at_infinity() < 0 && ctx.u1.contains_infinity()) {
            const bool allowed = ctx.pole && ctx.pole->at_infinity() &&
                                 b.order_at_infinity() >= -ctx.pole_budget;
            if (!allowed)
                throw error("internal: split b side has an unbudgeted pole at infinity");
        }
    }
    return {std::move(b), std::move(c)};
}

LaurentSplit split_mod_t_local(const TruncLaurent& a) {
    TruncLaurent b = a.nonnegative_part();
    TruncLaurent c = a.negative_part();
    if (!(b + c == a))
        throw error("internal: Laurent split does not re-sum exactly");
    return {std::move(b), std::move(c)};
}

TElem lift_constant(Coef c0, const RingId& target, int prec) {
    return TElem::of_coef(target, prec, std::move(c0));
}

TElem lift_constant(const RatFunc& c0, const RingId& target, int prec, int window) {
    if (target.laurent_coeffs())
        return TElem::of_coef(target, prec, series_expand(c0, window));
    return TElem::of_coef(target, prec, c0);
}

namespace {

const RatFunc& rat_coef(const TElem& e, int j, const char* side) {
    const Coef& c = e.coef(j);
    if (const RatFunc* f = std::get_if<RatFunc>(&c))
        return *f;
    throw ring_mismatch(std::string("intersection ") + side +
                        " carries windowed coefficients where exact ones were expected");
}

// equality of an exact rational function against a (possibly windowed)
// Laurent coefficient: exact Laurent data compares exactly, windowed data
// through its window
bool laurent_matches(const TruncLaurent& l, const RatFunc& f) {
    if (l.is_exact())
        return l.known_ratfunc() == f;
    const TruncLaurent fx = series_expand(f, l.known_to());
    return agree_through(fx, l, l.known_to());
}

TElem intersect_global(const TElem& e1, const TElem& e2) {
    for (int j = 0; j < e1.prec(); ++j)
        if (!(rat_coef(e1, j, "lhs") == rat_coef(e2, j, "rhs")))
            throw input_error("intersection inputs differ at t^" + std::to_string(j));
    const RingId target =
        RingId::global(PatchSet::unite(e1.ring().patch(), e2.ring().patch()));
    return TElem(target, e1.prec(), e1.coeffs());
}

TElem intersect_local(const TElem& in1, const TElem& in2) {
    // orient as (R1 side, R2 side)
    const bool flip = in1.ring().local_kind() == LocalRing::R2;
    const TElem& e1 = flip ? in2 : in1;
    const TElem& e2 = flip ? in1 : in2;
    if (e1.ring().local_kind() != LocalRing::R1 || e2.ring().local_kind() != LocalRing::R2)
        throw input_error("local intersection expects one element over each of R1 and R2");
    const long chr = e1.ring().characteristic();
    for (int j = 0; j < e1.prec(); ++j) {
        const TruncLaurent& c1 = std::get<TruncLaurent>(e1.coef(j));
        if (!laurent_matches(c1, rat_coef(e2, j, "rhs")))
            throw input_error("intersection inputs differ at t^" + std::to_string(j));
    }
    return TElem(RingId::local(chr, LocalRing::R), e1.prec(), e2.coeffs());
}

} // namespace

TElem intersect_elem(const TElem& e1, const TElem& e2) {
    if (e1.prec() != e2.prec())
        throw input_error("intersection requires equal precisions");
    if (e1.ring().is_global() && e2.ring().is_global())
        return intersect_global(e1, e2);
    if (e1.ring().is_local() && e2.ring().is_local())
        return intersect_local(e1, e2);
    throw input_error("intersection mixes global and local models");
}

std::optional<ExactXT> reconstruct_field_elem(const TElem& e, int dnum, int dden) {
    const int n = e.prec();
    if (dnum < 0 || dden < 0 || dnum + dden >= n)
        throw input_error("reconstruction bounds must satisfy dnum + dden < precision");
    const long chr = e.ring().characteristic();
    std::vector<RatFunc> series;
    series.reserve(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const Coef& c = e.coef(j);
        if (const RatFunc* f = std::get_if<RatFunc>(&c)) {
            series.push_back(*f);
            continue;
        }
        const TruncLaurent& l = std::get<TruncLaurent>(c);
        if (!l.is_exact())
            return std::nullopt; // windowed data cannot certify an exact claim
        series.push_back(l.known_ratfunc());
    }
    auto pq = pade_reconstruct_series(series, dnum, dden, RatFunc::zero(chr),
                                      RatFunc::one(chr));
    if (!pq)
        return std::nullopt;
    return ExactXT(TPoly(chr, std::move(pq->first)), TPoly(chr, std::move(pq->second)));
}

std::optional<ExactXT> reconstruct_field_elem(const TElem& e) {
    // smallest combined degree first, keeping at least one surplus
    // congruence row so the result is corroborated rather than merely
    // interpolated (the bound pair (prec-1, 0) would accept any series as
    // its own truncating polynomial)
    for (int total = 0; total <= e.prec() - 2; ++total)
        for (int dden = 0; dden <= total; ++dden) {
            auto r = reconstruct_field_elem(e, total - dden, dden);
            if (r)
                return r;
        }
    return std::nullopt;
}

namespace {

ExactXT t_power_times(const ExactXT& e, int shift) {
    if (shift == 0 || e.is_zero())
        return e;
    const long chr = e.characteristic();
    const ExactXT tp = ExactXT::of_tpoly(
        TPoly::monomial(chr, shift > 0 ? shift : -shift, RatFunc::one(chr)));
    return shift > 0 ? e * tp : e / tp;
}

} // namespace

std::optional<ExactXT> reconstruct_field_elem(const ShiftedTElem& e, int dnum, int dden) {
    auto r = reconstruct_field_elem(e.elem, dnum, dden);
    if (!r)
        return r;
    return t_power_times(*r, e.shift);
}

std::optional<ExactXT> reconstruct_field_elem(const ShiftedTElem& e) {
    auto r = reconstruct_field_elem(e.elem);
    if (!r)
        return r;
    return t_power_times(*r, e.shift);
}

bool m1_admits(const RatFunc& f, const GlobalSplitContext& ctx) {
    if (f.is_zero())
        return true;
    if (!ctx.pole || ctx.pole_budget == 0)
        return ctx.u1.admits(f);
    const long chr = f.characteristic();
    if (ctx.pole->at_infinity()) {
        if (f.order_at_infinity() < -ctx.pole_budget)
            return false;
        // infinity settled; judge the finite poles against U1 alone
        const PatchSet u1f =
            PatchSet::minus(ctx.u1, PatchSet::finite(chr, {Place::infinity(chr)}));
        return u1f.admits(f);
    }
    const int op = f.order_at(ctx.pole->poly());
    if (op < -ctx.pole_budget)
        return false;
    // cancel the allowed pole, then check the rest; the multiplication bumps
    // the degree, so the pole at infinity is judged on f itself
    if (ctx.u1.contains_infinity() && f.order_at_infinity() < 0)
        return false;
    RatFunc g = f;
    if (op < 0)
        g = f * RatFunc(ctx.pole->poly().pow(-op), Poly::one(chr));
    const PatchSet u1f =
        PatchSet::minus(ctx.u1, PatchSet::finite(chr, {Place::infinity(chr)}));
    return u1f.admits(g);
}

} // namespace fieldpatch
