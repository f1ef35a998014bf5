#include "fieldpatch/factor.hpp"

#include <utility>

namespace fieldpatch {

// ------------------------------------------------------------ FactorContext

FactorContext FactorContext::global(GlobalSplitContext split, int prec) {
    if (prec < 1)
        throw input_error("factorization precision must be positive");
    FactorContext c;
    c.chr_ = split.u1.characteristic();
    c.split_ = std::move(split);
    c.prec_ = prec;
    return c;
}

FactorContext FactorContext::local(long chr, int prec, int window) {
    if (prec < 1)
        throw input_error("factorization precision must be positive");
    FactorContext c;
    c.chr_ = chr;
    c.prec_ = prec;
    c.window_ = window;
    return c;
}

const GlobalSplitContext& FactorContext::split() const {
    if (!split_)
        throw input_error("local factorization context carries no split context");
    return *split_;
}

FactorContext FactorContext::at_prec(int prec) const {
    FactorContext c = *this;
    c.prec_ = prec;
    return c;
}

RingId FactorContext::ring0() const {
    return is_local() ? RingId::local(chr_, LocalRing::R0) : RingId::generic(chr_);
}

RingId FactorContext::ring1() const {
    return is_local() ? RingId::local(chr_, LocalRing::R1) : RingId::global(split_->u1);
}

RingId FactorContext::ring2() const {
    return is_local() ? RingId::local(chr_, LocalRing::R2) : RingId::global(split_->u2);
}

// ------------------------------------------------------------------ helpers

namespace {

Coef convert_coef(const Coef& c, const RingId& into, int window) {
    if (into.laurent_coeffs()) {
        if (const RatFunc* r = std::get_if<RatFunc>(&c))
            return series_expand(*r, window);
        return c;
    }
    if (const RatFunc* r = std::get_if<RatFunc>(&c))
        return *r;
    const TruncLaurent& l = std::get<TruncLaurent>(c);
    if (!l.is_exact())
        throw membership_error(
            "windowed coefficient cannot witness exact-coefficient membership");
    return l.known_ratfunc();
}

// membership re-tag: unlike embed() this moves against the inclusion order,
// so every coefficient must individually pass the target's predicate (the
// TElem constructor enforces that)
TElem retag_elem(const TElem& e, const RingId& into, int window) {
    std::vector<Coef> cs;
    cs.reserve(e.coeffs().size());
    for (const Coef& c : e.coeffs())
        cs.push_back(convert_coef(c, into, window));
    return TElem(into, e.prec(), std::move(cs));
}

TMatrix retag_matrix(const TMatrix& m, const RingId& into, int window) {
    std::vector<TElem> es;
    es.reserve(static_cast<size_t>(m.rows()) * m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            es.push_back(retag_elem(m.at(i, j), into, window));
    return TMatrix(into, m.prec(), m.rows(), m.cols(), std::move(es));
}

bool matrices_agree(const TMatrix& a, const TMatrix& b, int h) {
    return (a.truncated(h) - b.truncated(h)).is_zero_at_precision();
}

TMatrix with_added_order(const TMatrix& m, int ord, const std::vector<Coef>& add) {
    std::vector<TElem> es;
    es.reserve(add.size());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            std::vector<Coef> cs = m.at(i, j).coeffs();
            const Coef& d = add[static_cast<size_t>(i) * m.cols() + j];
            cs[static_cast<size_t>(ord)] = coef_add(cs[static_cast<size_t>(ord)], d);
            es.push_back(TElem(m.ring(), m.prec(), std::move(cs)));
        }
    return TMatrix(m.ring(), m.prec(), m.rows(), m.cols(), std::move(es));
}

ExactXT t_power(long chr, int k) {
    const TPoly one = TPoly::one(chr);
    const TPoly mono = TPoly::monomial(chr, k > 0 ? k : -k, RatFunc::one(chr));
    return k >= 0 ? ExactXT(mono, one) : ExactXT(one, mono);
}

ExactMat t_power_identity(long chr, int n, int k) {
    ExactMat m = ExactMat::identity(chr, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = t_power(chr, k);
    return m;
}

struct LoopOut {
    TMatrix b;
    TMatrix c;
    FactorTrace trace;
};

// order-m coefficient of a, packaged at precision 1 so the matrix predicates
// apply to single orders
TMatrix order_slice(const TMatrix& a, int m) {
    const int n = a.rows();
    std::vector<TElem> es;
    es.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            es.push_back(TElem(a.ring(), 1, {a.at(i, j).coef(m)}));
    return TMatrix(a.ring(), 1, n, n, std::move(es));
}

// order-m coefficient of b*c without forming the whole product
TMatrix product_order_slice(const TMatrix& b, const TMatrix& c, int m) {
    const int n = b.rows();
    std::vector<TElem> es;
    es.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Coef acc = coef_zero(b.ring());
            for (int k = 0; k < n; ++k)
                for (int l = 0; l <= m; ++l) {
                    // skip known-zero operands like the series product does, so
                    // windows do not degrade through vanishing terms
                    const Coef& x = b.at(i, k).coef(l);
                    if (coef_known_zero(x))
                        continue;
                    const Coef& y = c.at(k, j).coef(m - l);
                    if (coef_known_zero(y))
                        continue;
                    acc = coef_add(acc, coef_mul(x, y));
                }
            es.push_back(TElem(b.ring(), 1, {std::move(acc)}));
        }
    return TMatrix(b.ring(), 1, n, n, std::move(es));
}

// the shared correction loop: one t-order per step, additive split of the
// residual's leading coefficient, every congruence re-checked before it is
// trusted.  The congruence a == b c mod t^i established at step i-1 lets each
// step work on the single order it settles instead of the full residual.
LoopOut run_correction_loop(const TMatrix& a, const FactorContext& ctx) {
    const int n = a.rows();
    const int prec = ctx.prec();
    TMatrix b = TMatrix::identity(a.ring(), prec, n);
    TMatrix c = b;
    FactorTrace trace;
    trace.loop_input = a;
    if (!(order_slice(a, 0) - product_order_slice(b, c, 0)).is_zero_at_precision())
        throw error("internal: correction loop input is not 1 mod t");
    for (int i = 1; i < prec; ++i) {
        const TMatrix rc = order_slice(a, i) - product_order_slice(b, c, i);
        if (rc.is_zero_at_precision() && (a - b * c).is_zero_at_precision()) {
            trace.steps.push_back({i, b, c, true});
            trace.early_exit = true;
            break;
        }
        std::vector<Coef> badd, cadd;
        badd.reserve(static_cast<size_t>(n) * n);
        cadd.reserve(static_cast<size_t>(n) * n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Coef& d = rc.at(j, k).coef(0);
                if (ctx.is_local()) {
                    LaurentSplit s = split_mod_t_local(std::get<TruncLaurent>(d));
                    badd.emplace_back(std::move(s.b));
                    cadd.emplace_back(std::move(s.c));
                } else {
                    RatSplit s = split_mod_t_global(std::get<RatFunc>(d), ctx.split());
                    badd.emplace_back(std::move(s.b));
                    cadd.emplace_back(std::move(s.c));
                }
            }
        const TMatrix bn = with_added_order(b, i, badd);
        const TMatrix cn = with_added_order(c, i, cadd);
        if (!matrices_agree(bn, b, i) || !matrices_agree(cn, c, i))
            throw error("internal: correction step touched settled orders");
        if (!(order_slice(a, i) - product_order_slice(bn, cn, i)).is_zero_at_precision())
            throw error("internal: correction step missed its congruence");
        b = bn;
        c = cn;
        trace.steps.push_back({i, b, c, false});
    }
    return {std::move(b), std::move(c), std::move(trace)};
}

// retag the loop's b side into the strongest model its entries support and
// verify the enlarged-module membership when a pole budget is in play
TMatrix certify_b_side(const TMatrix& b, const FactorContext& ctx) {
    if (ctx.is_local())
        return retag_matrix(b, ctx.ring1(), ctx.window());
    if (ctx.split().pole_budget == 0)
        return retag_matrix(b, ctx.ring1(), 0);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            for (const Coef& c : b.at(i, j).coeffs())
                if (!m1_admits(std::get<RatFunc>(c), ctx.split()))
                    throw error("internal: b side left its pole-budget module");
    return b;
}

// final certificate: reference == (a1 a2 flattened) mod t^neff, the t-power
// shift reconciled by raising whichever side sits lower.  Inverting factors
// whose determinant has positive t-valuation costs precision in flatten, so
// the verified precision can land below the target; the caller reports what
// was actually certified.
int check_product(const TMatrix& reference, const FMatrix& a1, const FMatrix& a2,
                  const FactorContext& ctx, int neff_target) {
    const ShiftedTMatrix fl =
        a1.times(a2).flatten(ctx.ring0(), ctx.prec(), ctx.window());
    int neff = neff_target;
    if (fl.shift + fl.mat.prec() < neff)
        neff = fl.shift + fl.mat.prec();
    if (neff < 1)
        throw input_error("inversion losses exhausted the certificate precision");
    TMatrix lhs = reference;
    TMatrix rhs = fl.mat;
    int h = neff;
    if (fl.shift <= 0) {
        lhs = reference.t_shifted(-fl.shift);
        h = neff - fl.shift;
    } else {
        rhs = fl.mat.t_shifted(fl.shift);
    }
    if (h > lhs.prec() || h > rhs.prec())
        throw error("internal: certificate precision bookkeeping is off");
    if (!matrices_agree(lhs, rhs, h))
        throw error("internal: factorization certificate failed");
    return neff;
}

FactorResult finish(const TMatrix& reference, const FactorContext& ctx, LoopOut lo,
                    const FMatrix& a1_prefix, int neff_target, FactorTrace outer) {
    TMatrix b_side = certify_b_side(lo.b, ctx);
    TMatrix c_unit = retag_matrix(lo.c, ctx.ring2(), ctx.window());
    FMatrix a1 = a1_prefix.times(FMatrix::of(b_side));
    FMatrix a2 = FMatrix::of(c_unit);
    outer.loop_input = std::move(lo.trace.loop_input);
    outer.steps = std::move(lo.trace.steps);
    outer.early_exit = lo.trace.early_exit;
    const int neff = check_product(reference, a1, a2, ctx, neff_target);
    return FactorResult{std::move(a1), std::move(a2), std::move(b_side),
                        std::move(c_unit), neff, std::move(outer)};
}

void require_input_shape(const TMatrix& a, const FactorContext& ctx) {
    if (a.rows() != a.cols())
        throw input_error("factorization needs a square matrix");
    if (!(a.ring() == ctx.ring0()))
        throw input_error("factorization runs over the ambient model " +
                          ctx.ring0().str() + ", got " + a.ring().str());
    if (a.prec() < ctx.prec())
        throw input_error("matrix precision is below the context precision");
}

} // namespace

// --------------------------------------------------------- near-identity

FactorResult factor_near_identity(const TMatrix& a, const FactorContext& ctx) {
    require_input_shape(a, ctx);
    const TMatrix a0 = a.truncated(ctx.prec());
    const TMatrix id = TMatrix::identity(a0.ring(), ctx.prec(), a0.rows());
    const std::optional<int> v = (a0 - id).t_valuation();
    if (v && *v < 1)
        throw input_error("matrix is not congruent to the identity mod t");
    LoopOut lo = run_correction_loop(a0, ctx);
    return finish(a0, ctx, std::move(lo), FMatrix::identity(ctx.characteristic(), a0.rows()),
                  ctx.prec(), FactorTrace{});
}

// ---------------------------------------------------------------- general

FactorResult factor_general(const TMatrix& a, const FactorContext& ctx) {
    require_input_shape(a, ctx);
    const long chr = ctx.characteristic();
    const int nprec = ctx.prec();
    const int n = a.rows();
    const TMatrix a0 = a.truncated(nprec);
    const TMatrix id = TMatrix::identity(a0.ring(), nprec, n);
    {
        const std::optional<int> v = (a0 - id).t_valuation();
        if (!v || *v >= 1)
            return factor_near_identity(a0, ctx);
    }
    const TElem d = a0.det();
    const std::optional<int> dv = d.t_valuation();
    if (!dv)
        throw singular_at_precision("determinant vanishes at the working precision");
    const int r = *dv;
    if (nprec - r < r + 1)
        throw input_error("precision " + std::to_string(nprec) +
                          " cannot host an exact approximant for determinant t-valuation " +
                          std::to_string(r) + ": need at least " + std::to_string(2 * r + 1));

    // w == t^r a0^{-1} through t-order r, the exact approximant; nothing past
    // that order is ever read, so the inverse stops there
    const TElem uinv = d.t_shifted(-r).truncated(r + 1).invert_unit(ctx.window());
    const TMatrix w = a0.truncated(r + 1).adjugate().scaled(uinv);

    std::vector<TElem> c0es;
    c0es.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Coef> cs;
            cs.reserve(static_cast<size_t>(nprec));
            for (int k = 0; k < nprec; ++k)
                cs.push_back(k <= r ? w.at(i, j).coef(k) : coef_zero(ctx.ring0()));
            c0es.push_back(TElem(ctx.ring0(), nprec, std::move(cs)));
        }
    const TMatrix c0m(ctx.ring0(), nprec, n, n, std::move(c0es));

    const TMatrix g0 = c0m * a0;
    {
        const std::optional<int> gv = g0.t_valuation();
        if (!gv || *gv < r)
            throw error("internal: approximant product sits below t^r");
    }
    const TMatrix g = g0.t_shifted(-r);
    {
        const TMatrix gid = TMatrix::identity(g.ring(), g.prec(), n);
        const std::optional<int> gv = (g - gid).t_valuation();
        if (gv && *gv < 1)
            throw error("internal: approximant failed to reach the identity mod t");
    }

    FMatrix prefix = FMatrix::identity(chr, n);
    if (ctx.is_local()) {
        // undo the approximant as stored; the t^r scale rides along exactly
        prefix = FMatrix::of(c0m, -1);
        if (r > 0)
            prefix = FMatrix::of(t_power_identity(chr, n, r)).times(prefix);
    } else {
        ExactMat ce(chr, n, n);
        const TPoly den = TPoly::monomial(chr, r, RatFunc::one(chr));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<RatFunc> cs;
                cs.reserve(static_cast<size_t>(r) + 1);
                for (int k = 0; k <= r; ++k)
                    cs.push_back(std::get<RatFunc>(w.at(i, j).coef(k)));
                ce.at(i, j) = ExactXT(TPoly(chr, std::move(cs)), den);
            }
        prefix = FMatrix::of(std::move(ce), -1);
    }

    const FactorContext sub = ctx.at_prec(nprec - r);
    LoopOut lo = run_correction_loop(g, sub);
    FactorTrace outer;
    outer.det_valuation = r;
    outer.note = "reduced through an exact approximant of t^" + std::to_string(r) +
                 " times the inverse";
    return finish(a0, ctx, std::move(lo), prefix, nprec - r, std::move(outer));
}

FactorResult factor_general(const FMatrix& a, const FactorContext& ctx) {
    const ShiftedTMatrix fl = a.flatten(ctx.ring0(), ctx.prec(), ctx.window());
    FactorResult res = factor_general(fl.mat, ctx.at_prec(fl.mat.prec()));
    if (fl.shift != 0) {
        res.a1 = FMatrix::of(t_power_identity(ctx.characteristic(), fl.mat.rows(), fl.shift))
                     .times(res.a1);
        res.trace.input_shift = fl.shift;
    }
    return res;
}

// ------------------------------------------------------------- overlapping

OverlapFactorResult factor_overlapping(const TMatrix& a, const PatchSet& u1,
                                       const PatchSet& u2) {
    if (!a.ring().is_global())
        throw input_error("overlapping-patch factorization is a global operation");
    const long chr = u1.characteristic();
    const PatchSet u0 = PatchSet::intersect(u1, u2);
    if (u0.is_empty_set())
        throw input_error("patches do not overlap: " + u1.str() + " and " + u2.str());
    const PatchSet u2p = PatchSet::minus(u2, u0);
    GlobalSplitContext sctx(u1, u2p);
    const FactorContext fctx = FactorContext::global(std::move(sctx), a.prec());
    const TMatrix a0 = embed(a, fctx.ring0(), 0);
    FactorResult base = factor_general(a0, fctx);

    OverlapFactorResult out{std::move(base), Certification::Failed, std::nullopt,
                            std::nullopt};
    try {
        out.a2_over_u2 = retag_matrix(out.base.c_unit, RingId::global(u2), 0);
        out.cert = Certification::ProvedAtPrecision;
        return out;
    } catch (const membership_error&) {
        // coefficientwise membership is not witnessed; try the exact route
    }
    const int n = out.base.c_unit.rows();
    ExactMat ex(chr, n, n);
    bool all = true;
    for (int i = 0; all && i < n; ++i)
        for (int j = 0; all && j < n; ++j) {
            auto rec = reconstruct_field_elem(out.base.c_unit.at(i, j));
            if (rec)
                ex.at(i, j) = std::move(*rec);
            else
                all = false;
        }
    if (all) {
        out.a2_exact = std::move(ex);
        out.cert = Certification::ReconstructedExact;
    }
    return out;
}

// ---------------------------------------------------------- local units

UnitFactorResult unit_factor_local(const TElem& a, int window) {
    const long chr = a.ring().characteristic();
    const RingId r0 = RingId::local(chr, LocalRing::R0);
    if (!(a.ring() == r0))
        throw input_error("unit factorization runs over " + r0.str() + ", got " +
                          a.ring().str());
    const int prec = a.prec();
    const TruncLaurent res0 = std::get<TruncLaurent>(a.coef(0));
    if (res0.known_zero()) {
        if (res0.is_exact())
            throw non_unit_error("residue mod t is zero: not a unit");
        throw window_error("residue mod t vanishes through the window");
    }
    const int s = res0.valuation();

    // normalize to 1 mod t by the whole residue, then correct order by order
    const TElem ap = a.scaled_coef(Coef(res0.inverse(window)));
    TMatrix m(r0, prec, 1, 1, {ap});
    const FactorContext ctx = FactorContext::local(chr, prec, window);
    LoopOut lo = run_correction_loop(m, ctx);

    // reassemble the residue: the x-unit part belongs to the R1 side, the
    // power of x to the R2 side
    const TruncLaurent xunit = res0.shifted(-s);
    const TElem braw = lo.b.at(0, 0).scaled_coef(Coef(xunit));
    const TElem craw = lo.c.at(0, 0).scaled_coef(
        Coef(TruncLaurent::exact_monomial(chr, s, Scalar::one(chr))));
    if (!(a - braw * craw).is_zero_at_precision())
        throw error("internal: unit factorization does not multiply back");

    UnitFactorResult out{retag_elem(braw, RingId::local(chr, LocalRing::R1), window),
                         retag_elem(craw, RingId::local(chr, LocalRing::R2), window),
                         std::move(lo.trace)};
    return out;
}

// ------------------------------------------------------------- Weierstrass

namespace {

Place pick_pole(const PatchSet& u1) {
    const long chr = u1.characteristic();
    if (u1.contains_infinity())
        return Place::infinity(chr);
    if (u1.kind() == PatchSet::Kind::Finite) {
        for (const Place& p : u1.places())
            if (!p.at_infinity())
                return p;
        throw input_error("no usable pole place in the complement set");
    }
    for (int j = 0; j < 64; ++j) {
        Poly cand = Poly::x(chr) - Poly::constant(Scalar::of_int(chr, j));
        if (u1.contains_zero_set_of(cand))
            return Place::finite(std::move(cand));
    }
    throw input_error("no usable pole place found in the complement set");
}

ExactXT t_power_times_exact(const ExactXT& e, int k) {
    if (k == 0 || e.is_zero())
        return e;
    const ExactXT p = t_power(e.characteristic(), k);
    return e * p;
}

WeierstrassResult wprep_global(const TElem& f, std::optional<std::pair<int, int>> bounds) {
    const RingId rf = f.ring();
    const long chr = rf.characteristic();
    const int s = *f.t_valuation();
    const TElem fp = f.t_shifted(-s);
    const int np = fp.prec();
    const RatFunc f0 = std::get<RatFunc>(fp.coef(0));

    if (rf.patch().is_full() || rf.patch().is_empty_set() || f0.is_constant()) {
        // already a unit times t^s in the input ring
        FactorTrace tr;
        tr.note = "unit branch: residue has no pole divisor";
        return {t_power(chr, s), {s, TElem::one(rf, np)}, fp, true, np, std::move(tr)};
    }

    // an input that agrees with an exact field element needs no unit at all;
    // this also covers every rational input whose correction loop would not
    // terminate on its own
    if (const std::optional<ExactXT> rec =
            bounds ? reconstruct_field_elem(fp, bounds->first, bounds->second)
                   : reconstruct_field_elem(fp)) {
        FactorTrace tr;
        tr.note = "input reconstructed as an exact field element; unit 1";
        return {t_power_times_exact(*rec, s), {s, fp}, TElem::one(rf, np),
                true,                         np,      std::move(tr)};
    }

    const PatchSet u1 = PatchSet::minus(PatchSet::full(chr), rf.patch());
    GlobalSplitContext sctx(u1, rf.patch(), pick_pole(u1), 1);
    const RingId r0 = RingId::generic(chr);
    const TElem ft = embed(fp, r0, 0).scaled_coef(Coef(f0.inverse()));
    const FactorContext fctx = FactorContext::global(std::move(sctx), np);
    FactorResult fr = factor_near_identity(TMatrix(r0, np, 1, 1, {ft}), fctx);

    const TElem f1 = fr.b_side.at(0, 0);
    TElem u = fr.c_unit.at(0, 0);
    const TElem bseries = f1.scaled_coef(Coef(f0));
    WeierstrassResult out{std::nullopt,      ShiftedTElem{s, bseries}, std::move(u),
                          false,             np,                       std::move(fr.trace)};

    const std::optional<ExactXT> rec = bounds
                                           ? reconstruct_field_elem(f1, bounds->first,
                                                                    bounds->second)
                                           : reconstruct_field_elem(f1);
    if (rec) {
        ExactXT bx = t_power_times_exact(*rec * ExactXT::of_ratfunc(f0), s);
        // cross-check the composed claim before publishing it
        const ShiftedTElem be = dvr_expand(bx, r0, np, 0);
        if (be.shift != s)
            throw error("internal: prepared factor shifted unexpectedly");
        const TElem lhs = embed(fp, r0, 0);
        const TElem rhs = be.elem * embed(out.u, r0, 0);
        if (!(lhs - rhs).is_zero_at_precision())
            throw error("internal: preparation certificate failed");
        out.b = std::move(bx);
        out.reconstructed = true;
    }
    return out;
}

WeierstrassResult wprep_local(const TElem& f, std::optional<std::pair<int, int>> bounds) {
    const long chr = f.ring().characteristic();
    const int s = *f.t_valuation();
    const TElem fp = f.t_shifted(-s);
    const int np = fp.prec();
    const int xw = fp.x_window();
    const int window = xw == TruncLaurent::kExact ? 2 * np : xw;

    const TElem e = embed(fp, RingId::local(chr, LocalRing::R0), window);
    UnitFactorResult uf = unit_factor_local(e, window);

    // the R2 cofactor coincides with fp / b, which lives over R1; their
    // agreement lands it in the intersection model R
    const TElem q = fp * uf.b.invert_unit(window);
    const TElem c_r = intersect_elem(q, uf.c);

    WeierstrassResult out{std::nullopt, ShiftedTElem{s, c_r}, std::move(uf.b),
                          false,        np,                   std::move(uf.trace)};
    const std::optional<ExactXT> rec = bounds
                                           ? reconstruct_field_elem(c_r, bounds->first,
                                                                    bounds->second)
                                           : reconstruct_field_elem(c_r);
    if (rec) {
        const TElem prod = embed(c_r, f.ring(), window) * out.u;
        if (!(fp - prod).is_zero_at_precision())
            throw error("internal: preparation certificate failed");
        out.b = t_power_times_exact(*rec, s);
        out.reconstructed = true;
    }
    return out;
}

WeierstrassResult wprep_impl(const TElem& f, std::optional<std::pair<int, int>> bounds) {
    if (f.is_zero_at_precision())
        throw input_error("zero at the working precision: nothing to prepare");
    if (f.ring().is_global())
        return wprep_global(f, bounds);
    if (f.ring().local_kind() != LocalRing::R1)
        throw input_error("local preparation expects an element of " +
                          RingId::local(f.ring().characteristic(), LocalRing::R1).str());
    return wprep_local(f, bounds);
}

} // namespace

WeierstrassResult weierstrass_prep(const TElem& f) { return wprep_impl(f, std::nullopt); }

WeierstrassResult weierstrass_prep(const TElem& f, int dnum, int dden) {
    return wprep_impl(f, std::make_pair(dnum, dden));
}

} // namespace fieldpatch
