#pragma once

#include "fieldpatch/splitting.hpp"

namespace fieldpatch {

// Where a factorization runs: two disjoint global patches carrying their
// additive-split context, or the local models at (x, t) = (0, 0) with an
// x-window for the series coefficients.
class FactorContext {
  public:
    static FactorContext global(GlobalSplitContext split, int prec);
    static FactorContext local(long chr, int prec, int window);

    bool is_local() const { return !split_.has_value(); }
    const GlobalSplitContext& split() const;
    long characteristic() const { return chr_; }
    int prec() const { return prec_; }
    int window() const { return window_; }
    FactorContext at_prec(int prec) const;

    // the ambient series model the loop runs in, and the two sides' models
    RingId ring0() const;
    RingId ring1() const;
    RingId ring2() const;

  private:
    FactorContext() = default;

    std::optional<GlobalSplitContext> split_;
    long chr_ = 0;
    int prec_ = 0;
    int window_ = 0;
};

// One audited iteration of the correction loop.  Full snapshots are kept so
// that the step congruences
//   B_i == B_{i-1} (mod t^i),  C_i == C_{i-1} (mod t^i),
//   A == B_i C_i  (mod t^{i+1})
// can be re-verified from the log alone, without trusting the solver.
struct FactorStep {
    int order;
    TMatrix b_after;
    TMatrix c_after;
    bool residual_zero; // the full residual vanished exactly at this step
};

struct FactorTrace {
    // the near-identity matrix the loop actually ran on, kept so an audit
    // can replay the congruences without re-deriving the reduction
    std::optional<TMatrix> loop_input;
    std::vector<FactorStep> steps;
    bool early_exit = false; // stopped on an exactly-zero residual
    int det_valuation = 0;   // t-power factored out of det in the general case
    int input_shift = 0;     // t-power pulled off a factored-form input
    std::string note;
};

// A == a1 * a2 mod t^{n_eff}, checked before returning.  a1 is the
// structural left-side certificate (an exact inverse times the loop's B
// matrix); a2 wraps c_unit, the loop's C, a unit congruent to I mod t.
// b_side is B in plain form: over ring1 when every coefficient re-tags
// (always, unless a pole budget enlarges the b side in the global case, or
// the general-case reduction contributes Laurent coefficients locally),
// otherwise over ring0 with the enlarged-module membership still checked.
struct FactorResult {
    FMatrix a1;
    FMatrix a2;
    TMatrix b_side;
    TMatrix c_unit;
    int n_eff;
    FactorTrace trace;
};

// Requires a == I mod t over ring0; gains one t-order per step through the
// additive split of the residual.  Throws input_error when the input is not
// near the identity, window_error when local coefficients run out of window.
FactorResult factor_near_identity(const TMatrix& a, const FactorContext& ctx);

// Any matrix over ring0 whose determinant is nonzero at the working
// precision: scales out the determinant's t-valuation r, multiplies by an
// exact truncation of t^r A^{-1} to reach the near-identity case, and undoes
// that approximant exactly on the a1 side.  Throws singular_at_precision
// when det == 0 mod t^N, input_error when N < 2r + 1 (too little precision
// to build the approximant).
FactorResult factor_general(const TMatrix& a, const FactorContext& ctx);
// Factored-form input: flattened over ring0 first; the t-power shift joins
// the a1 side.
FactorResult factor_general(const FMatrix& a, const FactorContext& ctx);

enum class Certification {
    ProvedAtPrecision,  // every coefficient re-tagged into the target ring
    ReconstructedExact, // every entry reconstructed as an exact function
    Failed,             // membership not witnessable at this precision
};

struct OverlapFactorResult {
    FactorResult base;
    Certification cert;
    // cert == ProvedAtPrecision: the right factor over all of U2
    std::optional<TMatrix> a2_over_u2;
    // cert == ReconstructedExact: the right factor as exact functions
    std::optional<ExactMat> a2_exact;
};

// Overlapping patches: factors over (U1, U2 minus U1) and then certifies the
// right factor against all of U2.  A failed certification is reported in the
// result, not thrown.
OverlapFactorResult factor_overlapping(const TMatrix& a, const PatchSet& u1,
                                       const PatchSet& u2);

// a == b * c mod t^prec with b a unit over local R1 and c a unit over local
// R2.  The input must be a unit of R0: nonzero residue at the window.
struct UnitFactorResult {
    TElem b;
    TElem c;
    FactorTrace trace;
};
UnitFactorResult unit_factor_local(const TElem& a, int window);

// f == t^{b_trunc.shift} * b * u mod t^{s + n_eff} with u a unit of the
// input ring.  b is exact when rational reconstruction in t lands (then
// b already carries the shift); b_trunc is the computed left factor in
// series form, always present.  Never returns a wrong exact b: failure to
// reconstruct only clears the flag.
struct WeierstrassResult {
    std::optional<ExactXT> b;
    ShiftedTElem b_trunc;
    TElem u;
    bool reconstructed;
    int n_eff;
    FactorTrace trace;
};

// default reconstruction bounds: ascending sweep over dnum + dden
WeierstrassResult weierstrass_prep(const TElem& f);
WeierstrassResult weierstrass_prep(const TElem& f, int dnum, int dden);

} // namespace fieldpatch
