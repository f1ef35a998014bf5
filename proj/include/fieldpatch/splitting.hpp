#pragma once

#include "fieldpatch/felem.hpp"

namespace fieldpatch {

// Context for the global additive decomposition a = b + c: two disjoint
// proper open sets, with an optional auxiliary place P in U1 at which the
// b-side is allowed a pole of order up to pole_budget.  The degenerate
// budget 0 (the default, always admissible at genus 0) disables the
// allowance entirely.
struct GlobalSplitContext {
    PatchSet u1;
    PatchSet u2;
    std::optional<Place> pole;
    int pole_budget = 0;

    GlobalSplitContext(PatchSet u1_, PatchSet u2_)
        : u1(std::move(u1_)), u2(std::move(u2_)) {
        validate();
    }
    GlobalSplitContext(PatchSet u1_, PatchSet u2_, Place p, int budget)
        : u1(std::move(u1_)), u2(std::move(u2_)), pole(std::move(p)), pole_budget(budget) {
        validate();
    }

    // throws input_error on overlap, non-proper sets, a pole outside U1 or a
    // negative budget
    void validate() const;

    RingId ring1() const { return RingId::global(u1); }
    RingId ring2() const { return RingId::global(u2); }
};

// a = b + c exactly, with c the sum of the principal parts of a at the
// places of U1 (save the order-<=budget pole at P, which stays on the b
// side) and b regular on U1 apart from that allowance.  Principal parts at
// places of neither set, and constants, go to b.  Both postconditions are
// re-checked before returning.
struct RatSplit {
    RatFunc b, c;
};
RatSplit split_mod_t_global(const RatFunc& a, const GlobalSplitContext& ctx);

// a = b + c exactly on the window: b the nonnegative-order part, c the
// strictly negative-order Laurent polynomial.
struct LaurentSplit {
    TruncLaurent b, c;
};
LaurentSplit split_mod_t_local(const TruncLaurent& a);

// t-constant lift of a mod-t coefficient; membership in the target is
// enforced.  The rational-function overload converts to the target's
// coefficient representation (window applies to Laurent targets only).
TElem lift_constant(Coef c0, const RingId& target, int prec);
TElem lift_constant(const RatFunc& c0, const RingId& target, int prec, int window);

// Common refinement of two representations of one element: verifies that e1
// and e2 agree coefficientwise in a common ambient model, then re-tags the
// value into the intersection ring (global: the union of the two open sets;
// local: R1 meet R2 gives R).  Throws input_error when the values differ,
// membership_error when the common value fails the target's predicate.
TElem intersect_elem(const TElem& e1, const TElem& e2);

// Rational reconstruction in t: the exact element of the bivariate function
// field agreeing with e mod t^prec, with numerator/denominator t-degrees
// bounded by (dnum, dden), dnum + dden < prec.  Verified by cross
// multiplication; nullopt when no such element exists at these bounds or
// when e carries inexact windowed coefficients (no exact claim can be
// certified from those).
std::optional<ExactXT> reconstruct_field_elem(const TElem& e, int dnum, int dden);
std::optional<ExactXT> reconstruct_field_elem(const ShiftedTElem& e, int dnum, int dden);

// Bound sweep: tries every pair with dnum + dden <= prec - 2 in order of
// combined degree, so the simplest rational form wins and every answer is
// backed by at least one surplus congruence row.
std::optional<ExactXT> reconstruct_field_elem(const TElem& e);
std::optional<ExactXT> reconstruct_field_elem(const ShiftedTElem& e);

// Membership in the module the b side lives in: regular on U1 except for a
// pole of order at most pole_budget at the designated place.
bool m1_admits(const RatFunc& f, const GlobalSplitContext& ctx);

} // namespace fieldpatch
