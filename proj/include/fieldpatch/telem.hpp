#pragma once

#include <functional>
#include <optional>
#include <variant>

#include "fieldpatch/rings.hpp"

namespace fieldpatch {

// One t-coefficient: exact rational function in the global and R/R2 models,
// windowed Laurent series in the R1/R0 models.
using Coef = std::variant<RatFunc, TruncLaurent>;

Coef coef_zero(const RingId& ring);
Coef coef_one(const RingId& ring);
Coef coef_add(const Coef& a, const Coef& b);
Coef coef_sub(const Coef& a, const Coef& b);
Coef coef_mul(const Coef& a, const Coef& b);
Coef coef_neg(const Coef& a);
Coef coef_scale(const Coef& a, const Scalar& s);
// known to be zero (at the window, for Laurent coefficients)
bool coef_known_zero(const Coef& a);
std::string coef_str(const Coef& a);

// Truncated t-adic element: sum of c_j t^j for j < prec, tagged with its
// coefficient-ring model.  All arithmetic demands equal tags; crossing rings
// goes through embed().  Precision follows the weakest operand.
class TElem {
  public:
    TElem(RingId ring, int prec, std::vector<Coef> coeffs);

    static TElem zero(const RingId& ring, int prec);
    static TElem one(const RingId& ring, int prec);
    // constant in t
    static TElem of_coef(const RingId& ring, int prec, Coef c0);

    const RingId& ring() const { return ring_; }
    int prec() const { return prec_; }
    const Coef& coef(int j) const;
    const std::vector<Coef>& coeffs() const { return c_; }

    // every coefficient passes the ring's membership predicate
    bool members_ok(std::string* why = nullptr) const;

    TElem operator-() const;
    friend TElem operator+(const TElem& a, const TElem& b);
    friend TElem operator-(const TElem& a, const TElem& b);
    friend TElem operator*(const TElem& a, const TElem& b);
    TElem& operator+=(const TElem& o) { return *this = *this + o; }
    TElem& operator-=(const TElem& o) { return *this = *this - o; }
    TElem& operator*=(const TElem& o) { return *this = *this * o; }

    TElem scaled(const Scalar& s) const;
    TElem scaled_coef(const Coef& c) const;

    // t-adic valuation of the known data; nullopt when zero at precision
    std::optional<int> t_valuation() const;

    // multiply by t^k; precision bookkeeping: prec + k both ways, and k < 0
    // requires valuation >= -k so no known data is lost
    TElem t_shifted(int k) const;

    TElem truncated(int prec) const;

    const Coef& reduce_mod_t() const { return coef(0); }

    // inverse of a unit: the residue mod t must pass the ring's unit
    // predicate.  wantx controls how far exact Laurent residues are expanded
    // in the windowed models.
    TElem invert_unit(int wantx = 0) const;

    bool is_zero_at_precision() const;
    // smallest x-window over Laurent coefficients, kExact otherwise
    int x_window() const;

    std::string str() const;

  private:
    void check_ring(const TElem& o) const {
        if (!(ring_ == o.ring_))
            throw ring_mismatch("t-series ring tag mismatch: " + ring_.str() + " vs " +
                                o.ring_.str());
    }

    RingId ring_;
    int prec_;
    std::vector<Coef> c_;
};

// Re-tag an element into another ring model, converting coefficients as
// needed (rational functions expand to x-windowed series with the given
// window when targeting R1/R0).  Fails with membership_error when a
// coefficient does not belong to the target, ring_mismatch when the
// inclusion itself is illegal.
TElem embed(const TElem& a, const RingId& into, int window);

// Matrix over a single ring model at a single precision, row-major.
class TMatrix {
  public:
    TMatrix(RingId ring, int prec, int rows, int cols);
    TMatrix(RingId ring, int prec, int rows, int cols, std::vector<TElem> entries);

    static TMatrix identity(const RingId& ring, int prec, int n);

    const RingId& ring() const { return ring_; }
    int prec() const { return prec_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const TElem& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
    TElem& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }

    bool members_ok(std::string* why = nullptr) const;

    TMatrix operator-() const;
    friend TMatrix operator+(const TMatrix& a, const TMatrix& b);
    friend TMatrix operator-(const TMatrix& a, const TMatrix& b);
    friend TMatrix operator*(const TMatrix& a, const TMatrix& b);

    TMatrix scaled(const TElem& s) const;
    TMatrix t_shifted(int k) const;
    TMatrix truncated(int prec) const;
    TMatrix transposed() const;

    // cofactor expansion; fine at the matrix sizes that occur here
    TElem det() const;
    TMatrix adjugate() const;

    // min over entries, nullopt when the whole matrix vanishes at precision
    std::optional<int> t_valuation() const;
    bool is_zero_at_precision() const;
    int x_window() const;

    // inverse when det is a unit (t-valuation 0); throws
    // singular_at_precision when det == 0 mod t^prec and non_unit_error when
    // det has positive valuation (callers then work with a t-shift)
    TMatrix inverse_unit(int wantx = 0) const;

    TMatrix map(const std::function<TElem(const TElem&)>& f) const;

    std::string str() const;

  private:
    RingId ring_;
    int prec_;
    int rows_, cols_;
    std::vector<TElem> e_;
};

TMatrix embed(const TMatrix& a, const RingId& into, int window);

// Rank of the matrix as far as the t-adic precision can see: Gaussian
// elimination pivoting on least-valuation entries.  Returns the number of
// pivots found with valuation below the running precision.
int rank_at_precision(TMatrix m);

// Left kernel dimension helper for square action matrices: dimension of
// {v : M v == 0 mod t^N-ish}, computed as cols - rank_at_precision.
int kernel_dimension_at_precision(const TMatrix& m);

} // namespace fieldpatch
