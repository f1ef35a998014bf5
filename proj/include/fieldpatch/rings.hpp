#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fieldpatch/divisor.hpp"
#include "fieldpatch/laurent.hpp"

namespace fieldpatch {

// An open subset U of the projective x-line, described either by the finite
// set of places it excludes (cofinite kind, U = P^1 minus those points) or by
// the finite set of places it consists of (finite kind).  The whole line is
// cofinite with nothing excluded; the empty set is finite with no places.
// Place polynomials need not be irreducible, so all set operations work with
// point sets via gcd refinement rather than with the polynomials themselves.
class PatchSet {
  public:
    enum class Kind { Cofinite, Finite };

    static PatchSet cofinite(long chr, std::vector<Place> excluded);
    static PatchSet finite(long chr, std::vector<Place> included);
    static PatchSet full(long chr) { return cofinite(chr, {}); }
    static PatchSet empty(long chr) { return finite(chr, {}); }

    long characteristic() const { return chr_; }
    Kind kind() const { return kind_; }
    const std::vector<Place>& places() const { return places_; }
    bool is_full() const { return kind_ == Kind::Cofinite && places_.empty(); }
    bool is_empty_set() const { return kind_ == Kind::Finite && places_.empty(); }

    bool contains_infinity() const;
    // does U contain the whole zero set of the monic polynomial?
    bool contains_zero_set_of(const Poly& p) const;
    // does U meet the zero set of p at all?
    bool meets_zero_set_of(const Poly& p) const;

    // f is regular on U: no pole at any point of U
    bool admits(const RatFunc& f) const;
    // f is a unit of the ring of functions regular on U: no zero or pole on U
    bool admits_as_unit(const RatFunc& f) const;

    static PatchSet intersect(const PatchSet& a, const PatchSet& b);
    static PatchSet unite(const PatchSet& a, const PatchSet& b);
    // points of a not in b
    static PatchSet minus(const PatchSet& a, const PatchSet& b);
    static bool disjoint(const PatchSet& a, const PatchSet& b);
    static bool subset(const PatchSet& a, const PatchSet& b);

    bool operator==(const PatchSet& o) const;
    std::string str() const;

  private:
    PatchSet(long chr, Kind k, std::vector<Place> pl);
    // product of the finite place polynomials
    Poly finite_product() const;

    long chr_;
    Kind kind_;
    std::vector<Place> places_; // pairwise coprime, at most one infinity, sorted
};

// The four local models at the point (x = 0, t = 0), in increasing size:
//   R  : rational functions with no pole at 0, then t-series
//   R1 : power series in x, then t-series (x-windowed coefficients)
//   R2 : all rational functions, then t-series
//   R0 : Laurent series in x, then t-series (x-windowed coefficients)
enum class LocalRing { R, R1, R2, R0 };

// Immutable descriptor of a coefficient-ring model for truncated t-series.
// Global models carry a PatchSet; their coefficients are exact rational
// functions whose pole support the set constrains.  Local models R1/R0 hold
// x-windowed Laurent coefficients instead.
class RingId {
  public:
    static RingId global(PatchSet u);
    static RingId local(long chr, LocalRing which);
    // all of k(x) as coefficients: U empty
    static RingId generic(long chr) { return global(PatchSet::empty(chr)); }
    // constants only: U the whole line
    static RingId constants(long chr) { return global(PatchSet::full(chr)); }

    bool is_global() const;
    bool is_local() const;
    long characteristic() const;
    const PatchSet& patch() const; // global only
    LocalRing local_kind() const;  // local only

    // which coefficient representation elements of this ring carry
    bool laurent_coeffs() const;

    // membership and unit tests for a single t-coefficient
    bool admits(const RatFunc& c) const;
    bool admits(const TruncLaurent& c) const;
    bool unit_residue(const RatFunc& c) const;
    bool unit_residue(const TruncLaurent& c) const;

    bool operator==(const RingId& o) const;
    bool operator!=(const RingId& o) const { return !(*this == o); }
    std::string str() const;

  private:
    struct Desc;
    explicit RingId(std::shared_ptr<const Desc> d) : d_(std::move(d)) {}
    std::shared_ptr<const Desc> d_;
};

// Is the inclusion source -> target legal at the ring level?  Global to
// global needs U_target inside U_source; local chains follow
// R -> R1/R2 -> R0; a global ring embeds into the local models when its open
// set contains the point x = 0 (R, R1) or unconditionally (R2, R0); local
// R/R2 embed into global rings whose open set is small enough.
bool embeddable(const RingId& from, const RingId& into);

} // namespace fieldpatch
