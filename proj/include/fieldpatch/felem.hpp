#pragma once

#include "fieldpatch/telem.hpp"

namespace fieldpatch {

// Polynomial in t with rational-function coefficients, dense and trimmed.
class TPoly {
  public:
    explicit TPoly(long chr = 0) : chr_(chr) {}
    TPoly(long chr, std::vector<RatFunc> coeffs);

    static TPoly zero(long chr) { return TPoly(chr); }
    static TPoly one(long chr) { return of_coef(RatFunc::one(chr)); }
    static TPoly of_coef(RatFunc c);
    static TPoly monomial(long chr, int n, RatFunc c);
    static TPoly t(long chr) { return monomial(chr, 1, RatFunc::one(chr)); }

    long characteristic() const { return chr_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<RatFunc>& coeffs() const { return c_; }
    RatFunc coeff(int i) const;
    RatFunc lead() const;

    // order of t dividing; throws on zero
    int t_valuation() const;

    TPoly operator-() const;
    friend TPoly operator+(const TPoly& a, const TPoly& b);
    friend TPoly operator-(const TPoly& a, const TPoly& b);
    friend TPoly operator*(const TPoly& a, const TPoly& b);
    TPoly& operator+=(const TPoly& o) { return *this = *this + o; }
    TPoly& operator-=(const TPoly& o) { return *this = *this - o; }
    TPoly& operator*=(const TPoly& o) { return *this = *this * o; }

    TPoly scaled(const RatFunc& s) const;
    // multiply by t^n, n >= 0
    TPoly shifted(int n) const;
    TPoly monic() const;

    // d/dx coefficientwise (kills t)
    TPoly derivative_x() const;

    bool operator==(const TPoly& o) const { return chr_ == o.chr_ && c_ == o.c_; }
    bool operator!=(const TPoly& o) const { return !(*this == o); }

    std::string str() const;

  private:
    void trim();

    long chr_;
    std::vector<RatFunc> c_; // ascending t-powers
};

struct TPolyDivRem {
    TPoly q, r;
};
TPolyDivRem tpoly_divrem(const TPoly& a, const TPoly& b);
TPoly tpoly_gcd(const TPoly& a, const TPoly& b);

// Exact element of the bivariate function field F = k(x)(t), reduced: num
// and den coprime as polynomials in t over k(x), den monic in t.  This is
// the fully exact form factor certificates bottom out in.
class ExactXT {
  public:
    explicit ExactXT(long chr = 0) : num_(chr), den_(TPoly::one(chr)) {}
    ExactXT(TPoly num, TPoly den);

    static ExactXT zero(long chr) { return ExactXT(chr); }
    static ExactXT one(long chr) { return of_tpoly(TPoly::one(chr)); }
    static ExactXT of_tpoly(TPoly p);
    static ExactXT of_ratfunc(RatFunc c) { return of_tpoly(TPoly::of_coef(std::move(c))); }
    static ExactXT of_scalar(Scalar s) { return of_ratfunc(RatFunc::of_scalar(std::move(s))); }
    static ExactXT x(long chr) { return of_ratfunc(RatFunc::x(chr)); }
    static ExactXT t(long chr) { return of_tpoly(TPoly::t(chr)); }

    long characteristic() const { return num_.characteristic(); }
    const TPoly& num() const { return num_; }
    const TPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == TPoly::one(characteristic()) && den_.is_constant(); }

    ExactXT operator-() const;
    friend ExactXT operator+(const ExactXT& a, const ExactXT& b);
    friend ExactXT operator-(const ExactXT& a, const ExactXT& b);
    friend ExactXT operator*(const ExactXT& a, const ExactXT& b);
    friend ExactXT operator/(const ExactXT& a, const ExactXT& b);
    ExactXT& operator+=(const ExactXT& o) { return *this = *this + o; }
    ExactXT& operator-=(const ExactXT& o) { return *this = *this - o; }
    ExactXT& operator*=(const ExactXT& o) { return *this = *this * o; }
    ExactXT& operator/=(const ExactXT& o) { return *this = *this / o; }

    ExactXT inverse() const;

    bool operator==(const ExactXT& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const ExactXT& o) const { return !(*this == o); }

    // ord_t(num) - ord_t(den); throws on zero
    int t_valuation() const;

    ExactXT derivative_x() const;

    std::string str() const;

  private:
    void reduce();
    static ExactXT reduced(TPoly num, TPoly den);

    TPoly num_;
    TPoly den_;
};

// Does the model have field coefficients, making its t-series ring a
// discrete valuation ring?  True for the generic and constants global models
// and for the local R2/R0 models.  Only these support the t^v-times-unit
// normal form that flattening produces.
bool dvr_model(const RingId& r);

// A t-series with an explicit t-power prefactor: the value is t^shift * elem.
// Negative shifts express elements of the fraction field that are not
// t-integral.
struct ShiftedTElem {
    int shift;
    TElem elem;
};
struct ShiftedTMatrix {
    int shift;
    TMatrix mat;
};

// Expansion of an exact field element over a DVR coefficient model as
// t^tval * unit (unit residue invertible in the model), known mod t^prec.
// Exact inputs expand without precision loss.
ShiftedTElem dvr_expand(const ExactXT& e, const RingId& model, int prec, int window);

// Matrix with exact entries, inverted exactly when invertible.
class ExactMat {
  public:
    ExactMat(long chr, int rows, int cols);
    ExactMat(long chr, int rows, int cols, std::vector<ExactXT> entries);

    static ExactMat identity(long chr, int n);

    long characteristic() const { return chr_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const ExactXT& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
    ExactXT& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }

    ExactMat operator-() const;
    friend ExactMat operator+(const ExactMat& a, const ExactMat& b);
    friend ExactMat operator-(const ExactMat& a, const ExactMat& b);
    friend ExactMat operator*(const ExactMat& a, const ExactMat& b);

    ExactMat transposed() const;
    ExactXT det() const;
    // exact Gauss-Jordan; throws non_unit_error when det == 0 (this is an
    // exact statement, not an at-precision one)
    ExactMat inverse() const;
    ExactMat derivative_x() const;

    bool operator==(const ExactMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    std::string str() const;

  private:
    long chr_;
    int rows_, cols_;
    std::vector<ExactXT> e_;
};

ShiftedTMatrix dvr_expand(const ExactMat& m, const RingId& model, int prec, int window);

// Invertible matrix over a fraction field, kept as a product of certified
// factors: exact matrices over F and truncated matrices over coefficient
// models, each with exponent +1 or -1.  Factors are never multiplied out
// implicitly; membership of each side of a factorization is a structural
// property of the factor list.  flatten() expands the product over a DVR
// model, tracking the t-power prefactor and any precision loss from
// inverting factors whose determinant has positive t-valuation.
class FMatrix {
  public:
    struct Factor {
        std::variant<ExactMat, TMatrix> m;
        int exp; // +1 or -1
    };

    static FMatrix identity(long chr, int n);
    static FMatrix of(TMatrix m, int exp = 1);
    static FMatrix of(ExactMat m, int exp = 1);

    long characteristic() const { return chr_; }
    int dim() const { return n_; }
    bool is_identity() const { return f_.empty(); }
    const std::vector<Factor>& factors() const { return f_; }

    FMatrix inverse() const;
    FMatrix times(const FMatrix& o) const;
    FMatrix times(TMatrix m, int exp = 1) const { return times(of(std::move(m), exp)); }
    FMatrix times(ExactMat m, int exp = 1) const { return times(of(std::move(m), exp)); }

    ShiftedTMatrix flatten(const RingId& model, int prec, int window) const;

    std::string str() const;

  private:
    FMatrix(long chr, int n, std::vector<Factor> f)
        : chr_(chr), n_(n), f_(std::move(f)) {}

    long chr_ = 0;
    int n_ = 0;
    std::vector<Factor> f_;
};

// Element of a fraction field in certified form: exact, a quotient of two
// series over one coefficient model, or a product of such with signs.
class FElem {
  public:
    static FElem of_exact(ExactXT e);
    static FElem of_telem(TElem num);
    static FElem quotient(TElem num, TElem den);
    static FElem product(std::vector<std::pair<FElem, int>> factors);

    long characteristic() const;
    bool is_exact() const { return std::holds_alternative<ExactXT>(form_); }
    const ExactXT& exact() const { return std::get<ExactXT>(form_); }

    FElem inverse() const;
    FElem times(const FElem& o) const;

    ShiftedTElem realize(const RingId& model, int prec, int window) const;

    std::string str() const;

  private:
    struct Quot {
        TElem num, den;
    };
    struct Prod {
        std::vector<std::pair<FElem, int>> fs;
    };
    using Form = std::variant<ExactXT, Quot, Prod>;

    explicit FElem(Form f) : form_(std::move(f)) {}

    Form form_;
};

} // namespace fieldpatch
