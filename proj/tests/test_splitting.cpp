#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fieldpatch/splitting.hpp"
#include "testutil.hpp"

using namespace fieldpatch;
using testutil::Rng;

namespace {

Place pl_x(long chr) { return Place::zero_of_x(chr); }
Place pl_xm1(long chr) { return Place::finite(Poly::of_ints(chr, {-1, 1})); }
Place pl_inf(long chr) { return Place::infinity(chr); }

RatFunc rf(long chr, std::initializer_list<long> num, std::initializer_list<long> den) {
    return RatFunc(Poly::of_ints(chr, num), Poly::of_ints(chr, den));
}

// the affine line and the point at infinity: the running disjoint pair
GlobalSplitContext affine_vs_infinity(long chr) {
    return GlobalSplitContext(PatchSet::cofinite(chr, {pl_inf(chr)}),
                              PatchSet::finite(chr, {pl_inf(chr)}));
}

TPoly tp(long chr, std::initializer_list<std::initializer_list<long>> fracs) {
    // each entry {num..., -1 marker, den...} is overkill here; coefficients
    // are plain integer polynomials in x read as one rational function each
    std::vector<RatFunc> cs;
    for (auto f : fracs)
        cs.push_back(RatFunc::of_poly(Poly::of_ints(chr, f)));
    return TPoly(chr, std::move(cs));
}

ExactXT xt_x_minus_t(long chr) {
    // x - t
    return ExactXT(tp(chr, {{0, 1}, {-1}}), TPoly::one(chr));
}

ExactXT random_xt(Rng& rng, long chr, int dnum, int dden) {
    TPoly num(chr), den(chr);
    while (num.is_zero()) {
        std::vector<RatFunc> cs;
        for (int i = 0; i <= dnum; ++i)
            cs.push_back(rng.ratfunc(chr, 2));
        num = TPoly(chr, std::move(cs));
    }
    while (den.is_zero()) {
        std::vector<RatFunc> cs;
        for (int i = 0; i <= dden; ++i)
            cs.push_back(rng.ratfunc(chr, 2));
        den = TPoly(chr, std::move(cs));
    }
    return ExactXT(std::move(num), std::move(den));
}

bool same_at_precision(const TElem& a, const TElem& b) {
    return (a - b).is_zero_at_precision();
}

bool same_at_precision(const TMatrix& a, const TMatrix& b) {
    return (a - b).is_zero_at_precision();
}

} // namespace

TEST_CASE("t-polynomial arithmetic and division") {
    Rng rng{7101};
    for (long chr : {0L, 7L}) {
        const TPoly one = TPoly::one(chr);
        const TPoly t = TPoly::t(chr);
        CHECK(t.degree() == 1);
        CHECK((t * t + one).coeff(2) == RatFunc::one(chr));
        CHECK(TPoly(chr).is_zero());
        CHECK_THROWS_AS(TPoly(chr).lead(), const input_error&);
        CHECK(t.shifted(-1) == one);
        CHECK(t.shifted(2).t_valuation() == 3);
        CHECK_THROWS_AS((t + one).shifted(-1), const input_error&);

        for (int trial = 0; trial < 12; ++trial) {
            TPoly a(chr), b(chr);
            {
                std::vector<RatFunc> cs;
                for (int i = 0; i <= 4; ++i)
                    cs.push_back(rng.ratfunc(chr, 2));
                a = TPoly(chr, std::move(cs));
            }
            while (b.is_zero()) {
                std::vector<RatFunc> cs;
                for (int i = 0; i <= 2; ++i)
                    cs.push_back(rng.ratfunc(chr, 2));
                b = TPoly(chr, std::move(cs));
            }
            const TPolyDivRem dr = tpoly_divrem(a, b);
            CHECK(dr.q * b + dr.r == a);
            CHECK(dr.r.degree() < b.degree());

            const TPoly g = tpoly_gcd(a * b, b);
            if (!g.is_zero()) {
                CHECK(tpoly_divrem(a * b, g).r.is_zero());
                CHECK(tpoly_divrem(b, g).r.is_zero());
            }
        }
    }
}

TEST_CASE("exact bivariate field elements") {
    const long chr = 0;
    // (xt + t^2) / t collapses to x + t: numerator and denominator share t
    const ExactXT collapsed =
        ExactXT(tp(chr, {{}, {0, 1}, {1}}), tp(chr, {{}, {1}}));
    CHECK(collapsed == ExactXT::x(chr) + ExactXT::t(chr));
    CHECK(collapsed.den() == TPoly::one(chr));
    CHECK(collapsed.t_valuation() == 0);

    CHECK_THROWS_AS(ExactXT(TPoly::one(chr), TPoly(chr)), const non_unit_error&);
    CHECK_THROWS_AS(ExactXT::zero(chr).inverse(), const non_unit_error&);
    CHECK_THROWS_AS(ExactXT::zero(chr).t_valuation(), const input_error&);

    // t-valuation through a denominator power
    const ExactXT e = (ExactXT::x(chr) + ExactXT::t(chr)) / (ExactXT::t(chr) * ExactXT::t(chr));
    CHECK(e.t_valuation() == -2);

    Rng rng{7102};
    for (long c : {0L, 5L})
        for (int trial = 0; trial < 10; ++trial) {
            const ExactXT a = random_xt(rng, c, 2, 1);
            const ExactXT b = random_xt(rng, c, 1, 2);
            const ExactXT d = random_xt(rng, c, 2, 2);
            CHECK(a + b == b + a);
            CHECK((a + b) * d == a * d + b * d);
            CHECK(a * b.inverse() * b == a);
            CHECK((a * b).t_valuation() == a.t_valuation() + b.t_valuation());
            // quotient rule survives the canonical reduction
            CHECK((a * b).derivative_x() == a.derivative_x() * b + a * b.derivative_x());
            CHECK(a - a == ExactXT::zero(c));
        }
}

TEST_CASE("expansion of exact elements over field-coefficient models") {
    const long chr = 0;
    const RingId gen = RingId::generic(chr);
    const RingId r0 = RingId::local(chr, LocalRing::R0);

    CHECK(dvr_model(gen));
    CHECK(dvr_model(r0));
    CHECK(dvr_model(RingId::constants(chr)));
    CHECK(dvr_model(RingId::local(chr, LocalRing::R2)));
    CHECK_FALSE(dvr_model(RingId::local(chr, LocalRing::R)));
    CHECK_FALSE(dvr_model(RingId::local(chr, LocalRing::R1)));
    CHECK_FALSE(dvr_model(RingId::global(PatchSet::cofinite(chr, {pl_inf(chr)}))));

    // 1/(x - t) = sum of t^j / x^{j+1}
    const ShiftedTElem g = dvr_expand(xt_x_minus_t(chr).inverse(), gen, 8, 0);
    CHECK(g.shift == 0);
    CHECK(g.elem.prec() == 8);
    for (int j = 0; j < 8; ++j) {
        std::vector<long> den(static_cast<size_t>(j) + 2, 0);
        den.back() = 1;
        CHECK(std::get<RatFunc>(g.elem.coef(j)) ==
              RatFunc(Poly::one(chr), Poly(chr, [&] {
                          std::vector<Scalar> cs;
                          for (size_t i = 0; i + 1 < den.size(); ++i)
                              cs.push_back(Scalar::zero(chr));
                          cs.push_back(Scalar::one(chr));
                          return cs;
                      }())));
    }

    // (x + t) / t^2 carries its t power in the shift, exactly
    const ExactXT e = (ExactXT::x(chr) + ExactXT::t(chr)) /
                      (ExactXT::t(chr) * ExactXT::t(chr));
    const ShiftedTElem s = dvr_expand(e, gen, 6, 0);
    CHECK(s.shift == -2);
    CHECK(std::get<RatFunc>(s.elem.coef(0)) == RatFunc::x(chr));
    CHECK(std::get<RatFunc>(s.elem.coef(1)) == RatFunc::one(chr));
    CHECK(std::get<RatFunc>(s.elem.coef(2)).is_zero());

    // windowed model: the same element through x-windows
    const ShiftedTElem w = dvr_expand(xt_x_minus_t(chr).inverse(), r0, 4, 6);
    CHECK(w.shift == 0);
    CHECK(std::get<TruncLaurent>(w.elem.coef(0)).coeff(-1) == Scalar::one(chr));
    CHECK(std::get<TruncLaurent>(w.elem.coef(3)).coeff(-4) == Scalar::one(chr));

    CHECK(dvr_expand(ExactXT::zero(chr), gen, 5, 0).elem.is_zero_at_precision());
    // x is not a series over the constants-only model
    CHECK_THROWS_AS(dvr_expand(ExactXT::x(chr), RingId::constants(chr), 4, 0),
                    const membership_error&);
    // non-field coefficients refuse expansion outright
    CHECK_THROWS_AS(dvr_expand(ExactXT::x(chr), RingId::local(chr, LocalRing::R), 4, 0),
                    const input_error&);

    // expansion is multiplicative: exact first, expand after == expand both
    Rng rng{7103};
    for (int trial = 0; trial < 8; ++trial) {
        const ExactXT a = random_xt(rng, chr, 2, 1);
        const ExactXT b = random_xt(rng, chr, 1, 1);
        const ShiftedTElem ab = dvr_expand(a * b, gen, 6, 0);
        const ShiftedTElem ea = dvr_expand(a, gen, 6, 0);
        const ShiftedTElem eb = dvr_expand(b, gen, 6, 0);
        CHECK(ab.shift == ea.shift + eb.shift);
        CHECK(same_at_precision(ab.elem, ea.elem * eb.elem));
    }
}

TEST_CASE("exact matrix inverse and determinant") {
    Rng rng{7104};
    for (long chr : {0L, 5L})
        for (int n = 1; n <= 3; ++n)
            for (int trial = 0; trial < 4; ++trial) {
                ExactMat m(chr, n, n);
                do {
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j)
                            m.at(i, j) = random_xt(rng, chr, 1, 0);
                } while (m.det().is_zero());
                const ExactMat inv = m.inverse();
                CHECK(m * inv == ExactMat::identity(chr, n));
                CHECK(inv * m == ExactMat::identity(chr, n));

                ExactMat p(chr, n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        p.at(i, j) = random_xt(rng, chr, 1, 0);
                CHECK((m * p).det() == m.det() * p.det());
                CHECK(m.transposed().det() == m.det());
            }

    const long chr = 0;
    ExactMat sing(chr, 2, 2);
    sing.at(0, 0) = ExactXT::one(chr);
    sing.at(0, 1) = ExactXT::x(chr);
    sing.at(1, 0) = ExactXT::t(chr);
    sing.at(1, 1) = ExactXT::x(chr) * ExactXT::t(chr);
    CHECK(sing.det().is_zero());
    CHECK_THROWS_AS(sing.inverse(), const non_unit_error&);
    CHECK_THROWS_AS(sing.det() + ExactXT::one(5), const ring_mismatch&);
}

TEST_CASE("matrix expansion tracks the minimal t power") {
    const long chr = 0;
    const RingId gen = RingId::generic(chr);

    ExactMat m(chr, 2, 2);
    m.at(0, 0) = ExactXT::t(chr);
    m.at(0, 1) = ExactXT::zero(chr);
    m.at(1, 0) = ExactXT::zero(chr);
    m.at(1, 1) = ExactXT::t(chr) * ExactXT::t(chr);
    const ShiftedTMatrix s = dvr_expand(m, gen, 5, 0);
    CHECK(s.shift == 1);
    CHECK(same_at_precision(s.mat.at(0, 0), TElem::one(gen, 5)));
    CHECK(s.mat.at(1, 1).t_valuation() == 1);
    CHECK(s.mat.prec() == 5);

    // an entry whose gap to the minimum exceeds the precision vanishes
    ExactMat far(chr, 1, 2);
    far.at(0, 0) = ExactXT::one(chr);
    ExactXT t9 = ExactXT::one(chr);
    for (int i = 0; i < 9; ++i)
        t9 *= ExactXT::t(chr);
    far.at(0, 1) = t9;
    const ShiftedTMatrix f = dvr_expand(far, gen, 8, 0);
    CHECK(f.shift == 0);
    CHECK(f.mat.at(0, 1).is_zero_at_precision());

    const ShiftedTMatrix z = dvr_expand(ExactMat(chr, 2, 2), gen, 4, 0);
    CHECK(z.shift == 0);
    CHECK(z.mat.is_zero_at_precision());
}

TEST_CASE("factored matrices flatten with exact bookkeeping") {
    const long chr = 0;
    const int prec = 8;
    const RingId gen = RingId::generic(chr);
    Rng rng{7105};

    const FMatrix id = FMatrix::identity(chr, 2);
    CHECK(id.is_identity());
    const ShiftedTMatrix idf = id.flatten(gen, prec, 0);
    CHECK(idf.shift == 0);
    CHECK(same_at_precision(idf.mat, TMatrix::identity(gen, prec, 2)));

    // a product times its reversal collapses to the identity
    for (int trial = 0; trial < 6; ++trial) {
        const TMatrix a = rng.unit_matrix(gen, prec, 2, 0);
        const TMatrix b = rng.unit_matrix(gen, prec, 2, 0);
        const FMatrix f = FMatrix::of(a).times(FMatrix::of(b));
        const ShiftedTMatrix ff = f.times(f.inverse()).flatten(gen, prec, 0);
        CHECK(ff.shift == 0);
        CHECK(same_at_precision(ff.mat, TMatrix::identity(gen, prec, 2)));
        // and the flatten of the product is the product of the parts
        const ShiftedTMatrix pf = f.flatten(gen, prec, 0);
        CHECK(pf.shift == 0);
        CHECK(same_at_precision(pf.mat, a * b));
    }

    // non-unit determinant goes through the adjugate with an explicit shift
    TMatrix nu(gen, prec, 2, 2);
    nu.at(0, 0) = TElem::one(gen, prec).t_shifted(1).truncated(prec); // t
    nu.at(0, 1) = TElem::one(gen, prec);
    nu.at(1, 1) = TElem::one(gen, prec);
    const ShiftedTMatrix ni = FMatrix::of(nu, -1).flatten(gen, prec, 0);
    CHECK(ni.shift == -1);
    CHECK(ni.mat.prec() == prec - 1);
    // t^{-1} ni.mat * nu == I, i.e. ni.mat * nu == t * I at prec - 1
    const TMatrix check = ni.mat * nu;
    CHECK(same_at_precision(check,
                            TMatrix::identity(gen, prec, 2).t_shifted(1).truncated(
                                check.prec())));

    // exact factors invert without precision loss
    ExactMat em(chr, 2, 2);
    em.at(0, 0) = ExactXT::x(chr);
    em.at(0, 1) = ExactXT::one(chr);
    em.at(1, 0) = ExactXT::t(chr);
    em.at(1, 1) = ExactXT::x(chr);
    const ShiftedTMatrix ei =
        FMatrix::of(em).times(FMatrix::of(em, -1)).flatten(gen, prec, 0);
    CHECK(ei.shift == 0);
    CHECK(ei.mat.prec() == prec);
    CHECK(same_at_precision(ei.mat, TMatrix::identity(gen, prec, 2)));

    TMatrix zero2(gen, prec, 2, 2);
    CHECK_THROWS_AS(FMatrix::of(zero2, -1).flatten(gen, prec, 0),
                    const singular_at_precision&);
    CHECK_THROWS_AS(id.flatten(RingId::local(chr, LocalRing::R1), prec, 4),
                    const input_error&);
    CHECK_THROWS_AS(FMatrix::of(zero2, 2), const input_error&);
}

TEST_CASE("field elements realize consistently") {
    const long chr = 0;
    const int prec = 8;
    const RingId gen = RingId::generic(chr);

    // quotient form against the exact form of the same element
    const ExactXT ex = (ExactXT::one(chr) + ExactXT::t(chr)) / xt_x_minus_t(chr);
    const ShiftedTElem exact_side = FElem::of_exact(ex).realize(gen, prec, 0);
    const TElem num = TElem(gen, prec, {Coef(RatFunc::one(chr)), Coef(RatFunc::one(chr))});
    const TElem den =
        TElem(gen, prec, {Coef(RatFunc::x(chr)), Coef(-RatFunc::one(chr))});
    const ShiftedTElem quot_side = FElem::quotient(num, den).realize(gen, prec, 0);
    CHECK(exact_side.shift == quot_side.shift);
    CHECK(same_at_precision(exact_side.elem, quot_side.elem));

    // product of an element and its inverse realizes to one
    const FElem f = FElem::quotient(num, den);
    const ShiftedTElem unit = f.times(f.inverse()).realize(gen, prec, 0);
    CHECK(unit.shift == 0);
    CHECK(same_at_precision(unit.elem, TElem::one(gen, unit.elem.prec())));

    // denominator with positive t-valuation surfaces as a negative shift
    const TElem tden = TElem::one(gen, prec).t_shifted(1).truncated(prec);
    const ShiftedTElem sh = FElem::quotient(TElem::one(gen, prec), tden)
                                .realize(gen, prec, 0);
    CHECK(sh.shift == -1);
    CHECK(same_at_precision(sh.elem, TElem::one(gen, sh.elem.prec())));

    CHECK_THROWS_AS(FElem::quotient(num, TElem::zero(gen, prec)), const non_unit_error&);
    CHECK_THROWS_AS(FElem::of_telem(TElem::zero(gen, prec)).inverse(),
                    const non_unit_error&);
    CHECK_THROWS_AS(f.realize(RingId::local(chr, LocalRing::R), prec, 4),
                    const input_error&);
}

TEST_CASE("global additive split: worked cases") {
    const long chr = 0;
    const auto ctx = affine_vs_infinity(chr);

    // (x^2 + 1)/x: the finite pole belongs to U1, the growth at infinity to b
    const auto s1 = split_mod_t_global(rf(chr, {1, 0, 1}, {0, 1}), ctx);
    CHECK(s1.b == rf(chr, {0, 1}, {1}));
    CHECK(s1.c == rf(chr, {1}, {0, 1}));

    // constants stay on the b side
    const auto s2 = split_mod_t_global(RatFunc::of_scalar(Scalar::of_int(chr, 5)), ctx);
    CHECK(s2.b == RatFunc::of_scalar(Scalar::of_int(chr, 5)));
    CHECK(s2.c.is_zero());

    // a pole at a place in neither set goes to b by convention
    const GlobalSplitContext tiny(PatchSet::finite(chr, {pl_x(chr)}),
                                  PatchSet::finite(chr, {pl_xm1(chr)}));
    const auto s3 = split_mod_t_global(rf(chr, {1}, {-2, 1}), tiny);
    CHECK(s3.b == rf(chr, {1}, {-2, 1}));
    CHECK(s3.c.is_zero());

    // pole budget at a finite place: orders up to the budget stay in b
    const GlobalSplitContext budgeted(PatchSet::cofinite(chr, {pl_inf(chr)}),
                                      PatchSet::finite(chr, {pl_inf(chr)}), pl_x(chr), 2);
    const RatFunc a4 = rf(chr, {1}, {0, 0, 0, 1}) + rf(chr, {1}, {0, 0, 1}) +
                       rf(chr, {1}, {0, 1}) + rf(chr, {1}, {-1, 1});
    const auto s4 = split_mod_t_global(a4, budgeted);
    CHECK(s4.b == rf(chr, {1}, {0, 0, 1}) + rf(chr, {1}, {0, 1}));
    CHECK(s4.c == rf(chr, {1}, {0, 0, 0, 1}) + rf(chr, {1}, {-1, 1}));

    // pole budget at infinity bounds the polynomial growth of b
    const GlobalSplitContext inf_budget(PatchSet::cofinite(chr, {pl_x(chr)}),
                                        PatchSet::finite(chr, {pl_x(chr)}), pl_inf(chr),
                                        2);
    const RatFunc a5 =
        RatFunc::of_poly(Poly::of_ints(chr, {5, 1, 1, 1})) + rf(chr, {1}, {0, 1});
    const auto s5 = split_mod_t_global(a5, inf_budget);
    CHECK(s5.b == RatFunc::of_poly(Poly::of_ints(chr, {5, 1, 1})) + rf(chr, {1}, {0, 1}));
    CHECK(s5.c == RatFunc::of_poly(Poly::of_ints(chr, {0, 0, 0, 1})));

    // context validation
    CHECK_THROWS_AS(GlobalSplitContext(PatchSet::cofinite(chr, {pl_inf(chr)}),
                                       PatchSet::finite(chr, {pl_x(chr)})),
                    const input_error&); // 0 lies in both
    CHECK_THROWS_AS(GlobalSplitContext(PatchSet::full(chr),
                                       PatchSet::finite(chr, {pl_x(chr)})),
                    const input_error&);
    CHECK_THROWS_AS(GlobalSplitContext(PatchSet::cofinite(chr, {pl_inf(chr)}),
                                       PatchSet::finite(chr, {pl_inf(chr)}), pl_inf(chr),
                                       1),
                    const input_error&); // pole outside U1
    CHECK_THROWS_AS(GlobalSplitContext(PatchSet::cofinite(chr, {pl_inf(chr)}),
                                       PatchSet::finite(chr, {pl_inf(chr)}), pl_x(chr),
                                       -1),
                    const input_error&);
}

TEST_CASE("global additive split: linearity and idempotence") {
    for (long chr : {0L, 7L}) {
        Rng rng{static_cast<uint64_t>(7106 + chr)};
        const auto ctx = affine_vs_infinity(chr);
        for (int trial = 0; trial < 20; ++trial) {
            const RatFunc a = rng.ratfunc(chr, 3);
            const RatFunc ap = rng.ratfunc(chr, 3);
            const Scalar al = rng.scalar(chr);
            const Scalar be = rng.scalar(chr);

            const auto sa = split_mod_t_global(a, ctx);
            const auto sap = split_mod_t_global(ap, ctx);
            const auto slin = split_mod_t_global(a.scaled(al) + ap.scaled(be), ctx);
            CHECK(slin.b == sa.b.scaled(al) + sap.b.scaled(be));
            CHECK(slin.c == sa.c.scaled(al) + sap.c.scaled(be));

            // splitting a split output changes nothing
            const auto sb = split_mod_t_global(sa.b, ctx);
            CHECK(sb.b == sa.b);
            CHECK(sb.c.is_zero());
            const auto sc = split_mod_t_global(sa.c, ctx);
            CHECK(sc.b.is_zero());
            CHECK(sc.c == sa.c);

            CHECK(sa.b + sa.c == a);
            if (!sa.c.is_zero())
                CHECK(ctx.u2.admits(sa.c));
            if (!sa.b.is_zero())
                CHECK(ctx.u1.admits(sa.b));
        }
    }
}

TEST_CASE("local Laurent split") {
    const long chr = 0;
    const auto s1 = split_mod_t_local(
        TruncLaurent::exact_laurent(chr, -2, {Scalar::one(chr), Scalar::zero(chr),
                                              Scalar::of_int(chr, 3), Scalar::one(chr)}));
    CHECK(s1.b == TruncLaurent::exact_laurent(chr, 0, {Scalar::of_int(chr, 3),
                                                       Scalar::one(chr)}));
    CHECK(s1.c == TruncLaurent::exact_monomial(chr, -2, Scalar::one(chr)));

    const auto s2 = split_mod_t_local(TruncLaurent::exact_laurent(
        chr, 0, {Scalar::one(chr), Scalar::one(chr), Scalar::one(chr)}));
    CHECK(s2.c.is_exact_zero());

    const auto s3 = split_mod_t_local(TruncLaurent::exact_monomial(chr, -1, Scalar::one(chr)));
    CHECK(s3.b.is_exact_zero());
    CHECK(s3.c == TruncLaurent::exact_monomial(chr, -1, Scalar::one(chr)));

    Rng rng{7107};
    for (long c : {0L, 5L})
        for (int trial = 0; trial < 15; ++trial) {
            const TruncLaurent a = rng.laurent(c, -3, 5);
            const auto s = split_mod_t_local(a);
            CHECK(s.b + s.c == a);
            CHECK(!s.b.has_negative_orders());
            if (!s.c.known_zero()) {
                CHECK(s.c.is_exact());
                CHECK(s.c.has_negative_orders());
                CHECK(s.c.nonnegative_part().is_exact_zero());
            }
            // idempotence and complementarity
            CHECK(split_mod_t_local(s.b).c.is_exact_zero());
            if (s.c.is_exact())
                CHECK(split_mod_t_local(s.c).b.is_exact_zero());
        }
}

TEST_CASE("constant lifts") {
    const long chr = 0;
    const RingId affine = RingId::global(PatchSet::cofinite(chr, {pl_inf(chr)}));
    const RingId punct = RingId::global(PatchSet::cofinite(chr, {pl_x(chr)}));

    const TElem lx2 = lift_constant(rf(chr, {0, 0, 1}, {1}), affine, 8, 0);
    CHECK(std::get<RatFunc>(lx2.reduce_mod_t()) == rf(chr, {0, 0, 1}, {1}));
    for (int j = 1; j < 8; ++j)
        CHECK(coef_known_zero(lx2.coef(j)));

    CHECK_NOTHROW(lift_constant(rf(chr, {1}, {0, 1}), punct, 4, 0));
    CHECK_THROWS_AS(lift_constant(rf(chr, {1}, {0, 1}), affine, 4, 0),
                    const membership_error&);

    // windowed target goes through the series expansion
    const TElem lr1 = lift_constant(rf(chr, {1}, {1, -1}), RingId::local(chr, LocalRing::R1),
                                    4, 5);
    const TruncLaurent c0 = std::get<TruncLaurent>(lr1.reduce_mod_t());
    for (int i = 0; i < 5; ++i)
        CHECK(c0.coeff(i) == Scalar::one(chr));
}

TEST_CASE("intersection of representations") {
    const long chr = 0;
    const RingId affine = RingId::global(PatchSet::cofinite(chr, {pl_inf(chr)}));
    const RingId punct = RingId::global(PatchSet::cofinite(chr, {pl_x(chr)}));

    // constant series intersect down to the constants ring
    const TElem c1 = TElem(affine, 4, {Coef(RatFunc::one(chr)),
                                       Coef(RatFunc::of_scalar(Scalar::of_int(chr, 3)))});
    const TElem c2 = TElem(punct, 4, {Coef(RatFunc::one(chr)),
                                      Coef(RatFunc::of_scalar(Scalar::of_int(chr, 3)))});
    const TElem met = intersect_elem(c1, c2);
    CHECK(met.ring() == RingId::constants(chr));
    CHECK(met.members_ok());

    // x(1 + t) over two exclusions both containing infinity
    const RingId u1 = RingId::global(PatchSet::cofinite(chr, {pl_inf(chr), pl_x(chr)}));
    const RingId u2 = RingId::global(PatchSet::cofinite(chr, {pl_inf(chr), pl_xm1(chr)}));
    const TElem x1 = TElem(u1, 3, {Coef(RatFunc::x(chr)), Coef(RatFunc::x(chr))});
    const TElem x2 = TElem(u2, 3, {Coef(RatFunc::x(chr)), Coef(RatFunc::x(chr))});
    const TElem xr = intersect_elem(x1, x2);
    CHECK(xr.ring() == RingId::global(PatchSet::cofinite(chr, {pl_inf(chr)})));
    CHECK(std::get<RatFunc>(xr.coef(1)) == RatFunc::x(chr));

    // claiming x + t over the punctured line fails at construction already
    CHECK_THROWS_AS(TElem(punct, 3, {Coef(RatFunc::x(chr)), Coef(RatFunc::one(chr))}),
                    const membership_error&);

    const TElem d2 = TElem(punct, 4, {Coef(RatFunc::one(chr)),
                                      Coef(RatFunc::of_scalar(Scalar::of_int(chr, 4)))});
    CHECK_THROWS_AS(intersect_elem(c1, d2), const input_error&);
    CHECK_THROWS_AS(intersect_elem(c1, c2.truncated(3)), const input_error&);

    // local: windowed R1 data against the exact R2 value lands in R
    const RingId r1 = RingId::local(chr, LocalRing::R1);
    const RingId r2 = RingId::local(chr, LocalRing::R2);
    const RatFunc geo = rf(chr, {1}, {1, -1}); // 1/(1-x)
    const TElem e1 = TElem(r1, 3, {Coef(series_expand(geo, 6)), Coef(series_expand(geo, 6))});
    const TElem e2 = TElem(r2, 3, {Coef(geo), Coef(geo)});
    const TElem er = intersect_elem(e2, e1); // order-insensitive
    CHECK(er.ring() == RingId::local(chr, LocalRing::R));
    CHECK(std::get<RatFunc>(er.coef(0)) == geo);
    const TElem e2bad = TElem(r2, 3, {Coef(geo), Coef(rf(chr, {1}, {1, -2}))});
    CHECK_THROWS_AS(intersect_elem(e1, e2bad), const input_error&);
    CHECK_THROWS_AS(intersect_elem(e1, c1), const input_error&);

    // brute-force oracle: tag a union-ring member down both sides, intersect,
    // and demand the original coefficient list back
    Rng rng{7108};
    for (long c : {0L, 7L}) {
        const PatchSet pu1 = PatchSet::cofinite(c, {pl_inf(c), pl_x(c)});
        const PatchSet pu2 = PatchSet::cofinite(c, {pl_inf(c), pl_xm1(c)});
        const RingId runion = RingId::global(PatchSet::unite(pu1, pu2));
        for (int trial = 0; trial < 10; ++trial) {
            const TElem a = rng.elem(runion, 5, 0);
            const TElem down1 = TElem(RingId::global(pu1), 5, a.coeffs());
            const TElem down2 = TElem(RingId::global(pu2), 5, a.coeffs());
            const TElem back = intersect_elem(down1, down2);
            CHECK(back.ring() == runion);
            for (int j = 0; j < 5; ++j)
                CHECK(std::get<RatFunc>(back.coef(j)) == std::get<RatFunc>(a.coef(j)));
        }
    }
}

TEST_CASE("rational reconstruction in t") {
    const long chr = 0;
    const RingId gen = RingId::generic(chr);
    const ExactXT target = xt_x_minus_t(chr).inverse();

    const ShiftedTElem e = dvr_expand(target, gen, 8, 0);
    const auto r = reconstruct_field_elem(e.elem, 0, 1);
    REQUIRE(r.has_value());
    CHECK(*r == target);
    CHECK(*reconstruct_field_elem(e) == target);

    // constants come back as constants
    const TElem seven =
        TElem::of_coef(gen, 6, Coef(RatFunc::of_scalar(Scalar::of_int(chr, 7))));
    CHECK(*reconstruct_field_elem(seven, 0, 0) ==
          ExactXT::of_scalar(Scalar::of_int(chr, 7)));

    // a generic series is not rational at small bounds
    Rng rng{7109};
    const TElem noise = rng.unit_elem(gen, 8, 0);
    CHECK(!reconstruct_field_elem(noise, 1, 1).has_value());

    CHECK_THROWS_AS(reconstruct_field_elem(noise, 4, 4), const input_error&);
    CHECK_THROWS_AS(reconstruct_field_elem(noise, -1, 2), const input_error&);

    // windowed coefficients cannot back an exact claim
    const RingId r0 = RingId::local(chr, LocalRing::R0);
    const TElem windowed =
        TElem::of_coef(r0, 6, Coef(series_expand(rf(chr, {1}, {1, -1}), 5)));
    CHECK(!reconstruct_field_elem(windowed, 1, 1).has_value());

    // shifted overload restores the t power
    const ExactXT shifted_target = (ExactXT::x(chr) + ExactXT::t(chr)) /
                                   (ExactXT::t(chr) * ExactXT::t(chr));
    const ShiftedTElem se = dvr_expand(shifted_target, gen, 6, 0);
    CHECK(se.shift == -2);
    CHECK(*reconstruct_field_elem(se) == shifted_target);

    // round trip across characteristics and degree shapes
    for (long c : {0L, 7L}) {
        Rng rr{static_cast<uint64_t>(7110 + c)};
        const RingId g = RingId::generic(c);
        for (int trial = 0; trial < 10; ++trial) {
            const int dn = static_cast<int>(rr.uniform(0, 2));
            const int dd = static_cast<int>(rr.uniform(0, 3 - dn));
            const ExactXT a = random_xt(rr, c, dn, dd);
            const ShiftedTElem ea = dvr_expand(a, g, 8, 0);
            const auto back = reconstruct_field_elem(ea);
            REQUIRE(back.has_value());
            CHECK(*back == a);
        }
    }
}
