#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fieldpatch/telem.hpp"
#include "testutil.hpp"

using namespace fieldpatch;
using testutil::Rng;

namespace {

Place pl_x(long chr) { return Place::zero_of_x(chr); }
Place pl_xm1(long chr) { return Place::finite(Poly::of_ints(chr, {-1, 1})); }

RatFunc rf(long chr, std::initializer_list<long> num, std::initializer_list<long> den) {
    return RatFunc(Poly::of_ints(chr, num), Poly::of_ints(chr, den));
}

std::vector<RingId> all_models(long chr) {
    return {
        RingId::global(PatchSet::cofinite(chr, {pl_x(chr), Place::infinity(chr)})),
        RingId::global(PatchSet::finite(chr, {pl_x(chr)})),
        RingId::generic(chr),
        RingId::local(chr, LocalRing::R),
        RingId::local(chr, LocalRing::R1),
        RingId::local(chr, LocalRing::R2),
        RingId::local(chr, LocalRing::R0),
    };
}

bool same_at_precision(const TElem& a, const TElem& b) {
    return (a - b).is_zero_at_precision();
}

bool same_at_precision(const TMatrix& a, const TMatrix& b) {
    return (a - b).is_zero_at_precision();
}

} // namespace

TEST_CASE("patch set algebra") {
    const long chr = 0;
    const auto full = PatchSet::full(chr);
    const auto none = PatchSet::empty(chr);
    const auto u0 = PatchSet::cofinite(chr, {pl_x(chr)});
    const auto u1 = PatchSet::cofinite(chr, {pl_xm1(chr)});
    const auto p0 = PatchSet::finite(chr, {pl_x(chr)});
    const auto p1 = PatchSet::finite(chr, {pl_xm1(chr)});

    CHECK(PatchSet::intersect(u0, u1) ==
          PatchSet::cofinite(chr, {pl_x(chr), pl_xm1(chr)}));
    CHECK(PatchSet::unite(u0, u1) == full);
    CHECK(PatchSet::unite(p0, p1) ==
          PatchSet::finite(chr, {Place::finite(Poly::of_ints(chr, {0, -1, 1}))}));
    CHECK(PatchSet::intersect(p0, p1) == none);
    CHECK(PatchSet::intersect(u0, p0) == none);
    CHECK(PatchSet::intersect(u0, p1) == p1);
    CHECK(PatchSet::minus(full, p0) == u0);
    CHECK(PatchSet::minus(u0, u1) ==
          PatchSet::intersect(p1, u0)); // points killed by u1 are {1}
    CHECK(PatchSet::minus(u0, u1) == p1);

    CHECK(PatchSet::disjoint(p0, u0));
    CHECK_FALSE(PatchSet::disjoint(u0, u1));
    CHECK_FALSE(PatchSet::disjoint(p0, p0));
    CHECK(PatchSet::subset(p1, u0));
    CHECK(PatchSet::subset(u0, full));
    CHECK_FALSE(PatchSet::subset(u0, u1));
    CHECK(PatchSet::subset(none, p0));

    // place polynomials are read as point sets: multiplicities are invisible
    const auto u0sq =
        PatchSet::cofinite(chr, {Place::finite(Poly::of_ints(chr, {0, 0, 1}))});
    CHECK(u0 == u0sq);
    CHECK(PatchSet::intersect(u0sq, u1) == PatchSet::intersect(u0, u1));

    CHECK(full.contains_infinity());
    CHECK(u0.contains_infinity());
    CHECK_FALSE(PatchSet::cofinite(chr, {Place::infinity(chr)}).contains_infinity());
    CHECK(PatchSet::finite(chr, {Place::infinity(chr)}).contains_infinity());
}

TEST_CASE("patch membership and units") {
    const long chr = 0;
    const auto full = PatchSet::full(chr);
    const auto u0 = PatchSet::cofinite(chr, {pl_x(chr)});
    const auto aff0 = PatchSet::cofinite(chr, {pl_x(chr), Place::infinity(chr)});
    const auto p0 = PatchSet::finite(chr, {pl_x(chr)});
    const auto gen = PatchSet::empty(chr);

    const RatFunc invx = rf(chr, {1}, {0, 1});
    const RatFunc xf = RatFunc::x(chr);

    CHECK(full.admits(RatFunc::of_scalar(Scalar::of_int(chr, 7))));
    CHECK_FALSE(full.admits(xf));   // pole at infinity
    CHECK_FALSE(full.admits(invx)); // pole at zero
    CHECK(u0.admits(invx));
    CHECK_FALSE(u0.admits(xf)); // infinity still inside u0
    CHECK(aff0.admits(xf));
    CHECK(aff0.admits(invx));
    CHECK(p0.admits(rf(chr, {1}, {-1, 1}))); // 1/(x-1) fine on {0}
    CHECK_FALSE(p0.admits(invx));
    CHECK(gen.admits(invx));

    CHECK(aff0.admits_as_unit(xf));
    CHECK(aff0.admits_as_unit(invx));
    CHECK_FALSE(aff0.admits_as_unit(rf(chr, {-1, 1}, {1})));
    CHECK_FALSE(u0.admits_as_unit(xf));
    CHECK(u0.admits_as_unit(RatFunc::of_scalar(Scalar::of_int(chr, 3))));
    CHECK(gen.admits_as_unit(invx));
    CHECK_FALSE(gen.admits_as_unit(RatFunc::zero(chr)));

    // support split across the two excluded roots of one place polynomial
    const auto upm = PatchSet::cofinite(chr, {Place::finite(Poly::of_ints(chr, {-1, 0, 1}))});
    CHECK(upm.admits_as_unit(rf(chr, {-1, 1}, {1, 1})));
    CHECK_FALSE(upm.admits_as_unit(rf(chr, {-1, 1}, {1})));
}

TEST_CASE("ring identity registry") {
    for (long chr : {0L, 5L}) {
        const auto models = all_models(chr);
        for (size_t i = 0; i < models.size(); ++i)
            for (size_t j = 0; j < models.size(); ++j)
                CHECK((models[i] == models[j]) == (i == j));
        CHECK(RingId::generic(chr) == RingId::global(PatchSet::empty(chr)));
        CHECK(RingId::local(chr, LocalRing::R1).laurent_coeffs());
        CHECK(RingId::local(chr, LocalRing::R0).laurent_coeffs());
        CHECK_FALSE(RingId::local(chr, LocalRing::R).laurent_coeffs());
        CHECK_FALSE(RingId::local(chr, LocalRing::R2).laurent_coeffs());
        CHECK_FALSE(RingId::generic(chr).laurent_coeffs());
    }
    CHECK(RingId::generic(0) != RingId::generic(5));
}

TEST_CASE("ring axioms at fixed precision") {
    const int N = 8, M = 12;
    for (long chr : {0L, 5L}) {
        for (const auto& ring : all_models(chr)) {
            CAPTURE(ring.str());
            Rng rng(0x5eed0001 + static_cast<unsigned long>(chr));
            for (int trial = 0; trial < 8; ++trial) {
                const TElem a = rng.elem(ring, N, M);
                const TElem b = rng.elem(ring, N, M);
                const TElem c = rng.elem(ring, N, M);
                const TElem one = TElem::one(ring, N);
                const TElem zero = TElem::zero(ring, N);
                CHECK(same_at_precision((a + b) + c, a + (b + c)));
                CHECK(same_at_precision(a + b, b + a));
                CHECK(same_at_precision(a + zero, a));
                CHECK(same_at_precision(a - a, zero));
                CHECK(same_at_precision((a * b) * c, a * (b * c)));
                CHECK(same_at_precision(a * b, b * a));
                CHECK(same_at_precision(a * one, a));
                CHECK(same_at_precision(a * (b + c), a * b + a * c));
                CHECK(a.members_ok());
                CHECK((a * b).members_ok());
                CHECK((a + b).members_ok());
            }
        }
    }
}

TEST_CASE("mixed ring tags are rejected") {
    const long chr = 0;
    const int N = 4;
    const TElem a = TElem::one(RingId::generic(chr), N);
    const TElem b = TElem::one(RingId::local(chr, LocalRing::R2), N);
    CHECK_THROWS_AS(a + b, ring_mismatch);
    CHECK_THROWS_AS(a * b, ring_mismatch);
    CHECK_THROWS_AS(TElem::of_coef(RingId::constants(chr), N,
                                   RatFunc::x(chr)),
                    membership_error);
    CHECK_THROWS_AS(TElem::of_coef(RingId::local(chr, LocalRing::R), N,
                                   rf(chr, {1}, {0, 1})),
                    membership_error);
}

TEST_CASE("precision follows the weakest operand") {
    const long chr = 0;
    const auto ring = RingId::generic(chr);
    Rng rng(0x5eed0002);
    const TElem a = rng.elem(ring, 8, 0);
    const TElem b = rng.elem(ring, 5, 0);
    CHECK((a + b).prec() == 5);
    CHECK((a * b).prec() == 5);
    CHECK(a.truncated(3).prec() == 3);
    CHECK(a.t_shifted(2).prec() == 10);
    CHECK(a.t_shifted(2).t_valuation().value_or(99) >= 2);
    CHECK(same_at_precision(a.t_shifted(3).t_shifted(-3), a));
    CHECK_THROWS_AS(TElem::one(ring, 4).t_shifted(-1), error);
}

TEST_CASE("unit inversion across every model") {
    const int N = 8, M = 16;
    for (long chr : {0L, 7L}) {
        for (const auto& ring : all_models(chr)) {
            CAPTURE(ring.str());
            Rng rng(0xfeed0003 + static_cast<unsigned long>(chr));
            for (int trial = 0; trial < 100; ++trial) {
                const TElem a = rng.unit_elem(ring, N, M);
                const TElem ainv = a.invert_unit(M);
                CHECK(ainv.members_ok());
                CHECK(same_at_precision(a * ainv, TElem::one(ring, N)));
                CHECK(same_at_precision(ainv * a, TElem::one(ring, N)));
            }
        }
    }
}

TEST_CASE("non-units are refused") {
    const long chr = 0;
    const int N = 6;
    // t itself
    CHECK_THROWS_AS(TElem::one(RingId::generic(chr), N).t_shifted(1).truncated(N).invert_unit(),
                    non_unit_error);
    // x is not a unit at the origin
    CHECK_THROWS_AS(
        TElem::of_coef(RingId::local(chr, LocalRing::R), N, RatFunc::x(chr)).invert_unit(),
        non_unit_error);
    // x - 1 is a unit of R but not of the model over the whole line minus {0}
    const TElem u = TElem::of_coef(RingId::local(chr, LocalRing::R), N, rf(chr, {-1, 1}, {1}));
    CHECK(same_at_precision(u * u.invert_unit(), TElem::one(u.ring(), N)));
    CHECK_THROWS_AS(
        TElem::of_coef(RingId::global(PatchSet::cofinite(chr, {pl_x(chr)})), N,
                       RatFunc::of_scalar(Scalar::zero(chr)))
            .invert_unit(),
        non_unit_error);
}

TEST_CASE("t-adic valuation is additive") {
    const long chr = 0;
    const auto ring = RingId::generic(chr);
    const int N = 10;
    Rng rng(0x5eed0004);
    for (int trial = 0; trial < 40; ++trial) {
        const int i = static_cast<int>(rng.uniform(0, 3));
        const int j = static_cast<int>(rng.uniform(0, 3));
        const TElem a = rng.unit_elem(ring, N - i, 0).t_shifted(i);
        const TElem b = rng.unit_elem(ring, N - j, 0).t_shifted(j);
        CHECK(a.t_valuation() == i);
        CHECK(b.t_valuation() == j);
        CHECK((a * b).t_valuation() == i + j);
    }
    CHECK_FALSE(TElem::zero(ring, N).t_valuation().has_value());
}

TEST_CASE("reduction mod t and window reporting") {
    const long chr = 0;
    const auto r1 = RingId::local(chr, LocalRing::R1);
    Rng rng(0x5eed0005);
    const TElem a = rng.elem(r1, 6, 9);
    CHECK(std::get<TruncLaurent>(a.reduce_mod_t()).known_to() == 9);
    CHECK(a.x_window() == 9);
    CHECK(rng.elem(RingId::generic(chr), 6, 0).x_window() == TruncLaurent::kExact);

    const TElem b = TElem::of_coef(RingId::generic(chr), 3, rf(chr, {1, 2}, {1}));
    CHECK(std::get<RatFunc>(b.reduce_mod_t()) == rf(chr, {1, 2}, {1}));
}

TEST_CASE("embedding between models") {
    const long chr = 0;
    const int N = 4, M = 4;
    const auto rloc = RingId::local(chr, LocalRing::R);
    const auto r1 = RingId::local(chr, LocalRing::R1);
    const auto r0 = RingId::local(chr, LocalRing::R0);
    const auto gen = RingId::generic(chr);
    const auto u0 = RingId::global(PatchSet::cofinite(chr, {pl_x(chr)}));

    // geometric series: 1/(1-x) lands in power series with window M
    const RatFunc geom = rf(chr, {1}, {1, -1});
    const TElem g = TElem::of_coef(rloc, N, geom);
    const TElem ge = embed(g, r1, M);
    const auto& c0 = std::get<TruncLaurent>(ge.coef(0));
    CHECK(c0.known_to() == M);
    for (int i = 0; i < M; ++i)
        CHECK(c0.coeff(i) == Scalar::one(chr));

    // a pole at the origin cannot enter power series, and the model with the
    // origin removed has no inclusion into them at all
    CHECK_THROWS_AS(TElem::of_coef(r1, N, series_expand(rf(chr, {1}, {0, 1}), M)),
                    membership_error);
    const TElem invx = TElem::of_coef(u0, N, rf(chr, {1}, {0, 1}));
    CHECK_THROWS_AS(embed(invx, r1, M), ring_mismatch);

    // ...but it embeds into Laurent series
    const TElem invx0 = embed(invx, r0, M);
    CHECK(std::get<TruncLaurent>(invx0.coef(0)).valuation() == -1);
    CHECK(invx0.members_ok());

    // polynomial coefficients pass into the generic model unchanged
    const TElem p = TElem::of_coef(rloc, N, rf(chr, {1, 2, 3}, {1}));
    const TElem pg = embed(p, gen, 0);
    CHECK(std::get<RatFunc>(pg.coef(0)) == rf(chr, {1, 2, 3}, {1}));
    CHECK(pg.ring() == gen);

    // global-to-global needs the target set inside the source set
    const auto u01 = RingId::global(PatchSet::cofinite(chr, {pl_x(chr), pl_xm1(chr)}));
    const TElem m = TElem::of_coef(u0, N, rf(chr, {1}, {0, 1}));
    CHECK(embed(m, u01, 0).ring() == u01);
    CHECK_THROWS_AS(embed(TElem::one(u01, N), u0, 0), ring_mismatch);

    // embedding preserves sums and products
    Rng rng(0x5eed0006);
    for (int trial = 0; trial < 20; ++trial) {
        const TElem a = rng.elem(rloc, N, 0);
        const TElem b = rng.elem(rloc, N, 0);
        CHECK(same_at_precision(embed(a, r1, M) * embed(b, r1, M), embed(a * b, r1, M)));
        CHECK(same_at_precision(embed(a, r1, M) + embed(b, r1, M), embed(a + b, r1, M)));
        CHECK(same_at_precision(embed(a, gen, 0) * embed(b, gen, 0), embed(a * b, gen, 0)));
    }
}

TEST_CASE("membership closure under arithmetic") {
    const int N = 6, M = 10;
    for (long chr : {0L, 5L}) {
        for (const auto& ring : all_models(chr)) {
            CAPTURE(ring.str());
            Rng rng(0x5eed0007 + static_cast<unsigned long>(chr));
            for (int trial = 0; trial < 15; ++trial) {
                const TElem a = rng.elem(ring, N, M);
                const TElem b = rng.elem(ring, N, M);
                std::string why;
                CHECK(((a + b) * (a - b)).members_ok(&why));
                CHECK((a * a * b).members_ok(&why));
                if (!why.empty())
                    MESSAGE(why);
            }
        }
    }
}

TEST_CASE("matrix arithmetic and inversion") {
    const int N = 8, M = 16;
    const std::vector<std::pair<RingId, int>> rings = {
        {RingId::generic(0), 0},
        {RingId::local(0, LocalRing::R2), 0},
        {RingId::local(0, LocalRing::R), 0},
        {RingId::local(0, LocalRing::R0), M},
        {RingId::generic(7), 0},
    };
    for (const auto& [ring, win] : rings) {
        CAPTURE(ring.str());
        Rng rng(0xfeed0008);
        for (int n = 1; n <= 3; ++n) {
            const int trials = n < 3 ? 6 : 2;
            for (int trial = 0; trial < trials; ++trial) {
                const TMatrix a = rng.unit_matrix(ring, N, n, win ? win : 0);
                const TMatrix ainv = a.inverse_unit(M);
                CHECK(ainv.members_ok());
                CHECK(same_at_precision(a * ainv, TMatrix::identity(ring, N, n)));
                if (n < 3) {
                    CHECK(same_at_precision(ainv * a, TMatrix::identity(ring, N, n)));
                    CHECK(same_at_precision(a * a.adjugate(),
                                            TMatrix::identity(ring, N, n).scaled(a.det())));
                }
            }
        }
    }
}

TEST_CASE("matrix failure modes") {
    const long chr = 0;
    const auto ring = RingId::generic(chr);
    const int N = 6;

    TMatrix tI = TMatrix::identity(ring, N, 2).t_shifted(1).truncated(N);
    CHECK_THROWS_AS(tI.inverse_unit(), non_unit_error);

    TMatrix sing(ring, N, 2, 2);
    const TElem one = TElem::one(ring, N);
    sing.at(0, 0) = one;
    sing.at(0, 1) = one;
    sing.at(1, 0) = one;
    sing.at(1, 1) = one;
    CHECK(sing.det().is_zero_at_precision());
    CHECK_THROWS_AS(sing.inverse_unit(), singular_at_precision);

    CHECK_THROWS_AS(TMatrix(ring, N, 2, 3).det(), input_error);
}

TEST_CASE("rank at precision") {
    const long chr = 0;
    const auto ring = RingId::generic(chr);
    const int N = 6;
    const TElem one = TElem::one(ring, N);

    TMatrix a(ring, N, 2, 2);
    a.at(0, 0) = one;
    a.at(0, 1) = one;
    a.at(1, 0) = one;
    a.at(1, 1) = one;
    CHECK(rank_at_precision(a) == 1);
    CHECK(kernel_dimension_at_precision(a) == 1);

    // valuations below the precision are visible pivots
    CHECK(rank_at_precision(TMatrix::identity(ring, N, 3).t_shifted(2).truncated(N)) == 3);
    // at or above the precision they are not
    TMatrix b = TMatrix::identity(ring, N, 2);
    b.at(1, 1) = one.t_shifted(N - 1).truncated(N) - one.t_shifted(N - 1).truncated(N);
    CHECK(b.at(1, 1).is_zero_at_precision());
    CHECK(rank_at_precision(b) == 1);

    CHECK(rank_at_precision(TMatrix(ring, N, 3, 3)) == 0);
    CHECK(kernel_dimension_at_precision(TMatrix(ring, N, 3, 3)) == 3);

    // rank 1 outer product with rational entries
    const RatFunc f = rf(chr, {0, 1}, {1, 1});
    TMatrix c(ring, N, 2, 2);
    c.at(0, 0) = one;
    c.at(0, 1) = TElem::of_coef(ring, N, f);
    c.at(1, 0) = TElem::of_coef(ring, N, f);
    c.at(1, 1) = TElem::of_coef(ring, N, f * f);
    CHECK(rank_at_precision(c) == 1);

    Rng rng(0x5eed0009);
    for (int trial = 0; trial < 10; ++trial) {
        const TMatrix m = rng.unit_matrix(ring, N, 3, 0);
        CHECK(rank_at_precision(m) == 3);
        CHECK(kernel_dimension_at_precision(m) == 0);
    }
}

TEST_CASE("matrix embedding") {
    const long chr = 0;
    const auto rloc = RingId::local(chr, LocalRing::R);
    const auto r1 = RingId::local(chr, LocalRing::R1);
    const int N = 5, M = 8;
    Rng rng(0x5eed000a);
    const TMatrix a = rng.matrix(rloc, N, 2, 0);
    const TMatrix b = rng.matrix(rloc, N, 2, 0);
    CHECK(same_at_precision(embed(a, r1, M) * embed(b, r1, M), embed(a * b, r1, M)));
    // polynomial entries stay exact; anything windowed still reaches M
    CHECK(embed(a, r1, M).x_window() >= M);
    const TElem geom = TElem::of_coef(rloc, N, RatFunc(Poly::one(0), Poly::of_ints(0, {1, -1})));
    CHECK(embed(geom, r1, M).x_window() == M);
}
