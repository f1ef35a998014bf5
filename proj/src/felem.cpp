#include "fieldpatch/felem.hpp"

#include <sstream>

namespace fieldpatch {

// ---------------------------------------------------------------- TPoly

TPoly::TPoly(long chr, std::vector<RatFunc> coeffs) : chr_(chr), c_(std::move(coeffs)) {
    for (const RatFunc& c : c_)
        if (c.characteristic() != chr_)
            throw ring_mismatch("t-polynomial coefficient characteristic mismatch");
    trim();
}

void TPoly::trim() {
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

TPoly TPoly::of_coef(RatFunc c) {
    const long chr = c.characteristic();
    if (c.is_zero())
        return TPoly(chr);
    TPoly p(chr);
    p.c_.push_back(std::move(c));
    return p;
}

TPoly TPoly::monomial(long chr, int n, RatFunc c) {
    if (n < 0)
        throw input_error("t-monomial with negative exponent");
    if (c.is_zero())
        return TPoly(chr);
    TPoly p(chr);
    p.c_.assign(static_cast<size_t>(n) + 1, RatFunc::zero(chr));
    p.c_.back() = std::move(c);
    return p;
}

RatFunc TPoly::coeff(int i) const {
    if (i < 0 || i > degree())
        return RatFunc::zero(chr_);
    return c_[static_cast<size_t>(i)];
}

RatFunc TPoly::lead() const {
    if (c_.empty())
        throw input_error("leading coefficient of the zero t-polynomial");
    return c_.back();
}

int TPoly::t_valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero())
            return static_cast<int>(i);
    throw input_error("t-valuation of the zero t-polynomial");
}

TPoly TPoly::operator-() const {
    TPoly r(chr_);
    r.c_.reserve(c_.size());
    for (const RatFunc& c : c_)
        r.c_.push_back(-c);
    return r;
}

TPoly operator+(const TPoly& a, const TPoly& b) {
    if (a.chr_ != b.chr_)
        throw ring_mismatch("t-polynomial characteristic mismatch");
    TPoly r(a.chr_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), RatFunc::zero(a.chr_));
    for (size_t i = 0; i < a.c_.size(); ++i)
        r.c_[i] = a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i)
        r.c_[i] += b.c_[i];
    r.trim();
    return r;
}

TPoly operator-(const TPoly& a, const TPoly& b) { return a + (-b); }

TPoly operator*(const TPoly& a, const TPoly& b) {
    if (a.chr_ != b.chr_)
        throw ring_mismatch("t-polynomial characteristic mismatch");
    if (a.is_zero() || b.is_zero())
        return TPoly(a.chr_);
    TPoly r(a.chr_);
    r.c_.assign(a.c_.size() + b.c_.size() - 1, RatFunc::zero(a.chr_));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero())
            continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
}

TPoly TPoly::scaled(const RatFunc& s) const {
    if (s.is_zero())
        return TPoly(chr_);
    TPoly r(chr_);
    r.c_.reserve(c_.size());
    for (const RatFunc& c : c_)
        r.c_.push_back(c * s);
    r.trim();
    return r;
}

TPoly TPoly::shifted(int n) const {
    if (is_zero())
        return *this;
    if (n >= 0) {
        TPoly r(chr_);
        r.c_.assign(static_cast<size_t>(n), RatFunc::zero(chr_));
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
        return r;
    }
    const size_t k = static_cast<size_t>(-n);
    if (c_.size() < k)
        throw input_error("t-power division leaves negative exponents");
    for (size_t i = 0; i < k; ++i)
        if (!c_[i].is_zero())
            throw input_error("t-power division is inexact");
    TPoly r(chr_);
    r.c_.assign(c_.begin() + static_cast<long>(k), c_.end());
    return r;
}

TPoly TPoly::monic() const {
    if (is_zero())
        return *this;
    if (lead().is_one())
        return *this;
    return scaled(lead().inverse());
}

TPoly TPoly::derivative_x() const {
    TPoly r(chr_);
    r.c_.reserve(c_.size());
    for (const RatFunc& c : c_)
        r.c_.push_back(c.derivative());
    r.trim();
    return r;
}

std::string TPoly::str() const {
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero())
            continue;
        if (!first)
            os << " + ";
        first = false;
        os << "(" << c_[i].str() << ")";
        if (i == 1)
            os << "*t";
        else if (i > 1)
            os << "*t^" << i;
    }
    return os.str();
}

TPolyDivRem tpoly_divrem(const TPoly& a, const TPoly& b) {
    if (b.is_zero())
        throw input_error("t-polynomial division by zero");
    if (a.characteristic() != b.characteristic())
        throw ring_mismatch("t-polynomial characteristic mismatch");
    const long chr = a.characteristic();
    const RatFunc binv = b.lead().inverse();
    TPoly q(chr);
    TPoly r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const int k = r.degree() - b.degree();
        const RatFunc c = r.lead() * binv;
        q += TPoly::monomial(chr, k, c);
        r -= b.scaled(c).shifted(k);
    }
    return {std::move(q), std::move(r)};
}

namespace {

// Polynomial in t with k[x] coefficients, ascending and trimmed: the
// fraction-free arena for the t-gcd.  Running Euclid directly over k(x)[t]
// swells the x-degrees and (in characteristic zero) the integer lengths of
// every intermediate remainder; clearing denominators and keeping remainders
// primitive confines all growth to content gcds, which poly_gcd handles
// cheaply.
using XTPoly = std::vector<Poly>;

void xt_trim(XTPoly& a) {
    while (!a.empty() && a.back().is_zero())
        a.pop_back();
}

void xt_make_primitive(XTPoly& a) {
    if (a.empty())
        return;
    Poly g = Poly::zero(a.front().characteristic());
    for (const Poly& c : a) {
        if (c.is_zero())
            continue;
        g = g.is_zero() ? c : poly_gcd(g, c);
        if (g.is_constant())
            break;
    }
    if (g.is_constant() || g.is_zero())
        return;
    for (Poly& c : a)
        if (!c.is_zero())
            c = poly_exact_div(c, g);
}

// clear coefficient denominators and strip content
XTPoly xt_primitive_of(const TPoly& p) {
    const long chr = p.characteristic();
    Poly den = Poly::one(chr);
    for (const RatFunc& c : p.coeffs())
        den = poly_exact_div(den * c.den(), poly_gcd(den, c.den()));
    XTPoly out;
    out.reserve(p.coeffs().size());
    for (const RatFunc& c : p.coeffs())
        out.push_back(c.num() * poly_exact_div(den, c.den()));
    xt_trim(out);
    xt_make_primitive(out);
    return out;
}

// one block of pseudo-division: scale by the divisor's leading coefficient
// at each cancellation so no fractions appear
XTPoly xt_pseudo_rem(XTPoly r, const XTPoly& b) {
    const Poly& lb = b.back();
    const int db = static_cast<int>(b.size()) - 1;
    xt_trim(r);
    while (static_cast<int>(r.size()) - 1 >= db) {
        const int dr = static_cast<int>(r.size()) - 1;
        const Poly lr = r.back();
        for (int i = 0; i < dr; ++i)
            if (!r[static_cast<size_t>(i)].is_zero())
                r[static_cast<size_t>(i)] *= lb;
        for (int i = 0; i < db; ++i)
            r[static_cast<size_t>(dr - db + i)] -= lr * b[static_cast<size_t>(i)];
        r.pop_back();
        xt_trim(r);
    }
    return r;
}

} // namespace

TPoly tpoly_gcd(const TPoly& a, const TPoly& b) {
    const long chr = a.characteristic();
    if (chr != b.characteristic())
        throw ring_mismatch("t-polynomial characteristic mismatch");
    if (a.is_zero())
        return b.monic();
    if (b.is_zero())
        return a.monic();
    // a nonzero t-constant is a unit over field coefficients
    if (a.degree() == 0 || b.degree() == 0)
        return TPoly::one(chr);

    XTPoly u = xt_primitive_of(a);
    XTPoly v = xt_primitive_of(b);
    if (u.size() < v.size())
        std::swap(u, v);
    while (!v.empty()) {
        XTPoly r = xt_pseudo_rem(u, v);
        xt_make_primitive(r);
        u = std::move(v);
        v = std::move(r);
    }
    // back to monic-in-t rational-function coefficients
    const Poly lead = u.back();
    std::vector<RatFunc> cs;
    cs.reserve(u.size());
    for (const Poly& c : u)
        cs.emplace_back(c, lead);
    return TPoly(chr, std::move(cs));
}

// -------------------------------------------------------------- ExactXT

ExactXT::ExactXT(TPoly num, TPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.characteristic() != den_.characteristic())
        throw ring_mismatch("field element characteristic mismatch");
    if (den_.is_zero())
        throw non_unit_error("field element with zero denominator");
    reduce();
}

ExactXT ExactXT::of_tpoly(TPoly p) {
    const long chr = p.characteristic();
    return ExactXT(std::move(p), TPoly::one(chr));
}

void ExactXT::reduce() {
    if (num_.is_zero()) {
        den_ = TPoly::one(characteristic());
        return;
    }
    const TPoly g = tpoly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = tpoly_divrem(num_, g).q;
        den_ = tpoly_divrem(den_, g).q;
    }
    const RatFunc l = den_.lead();
    if (!l.is_one()) {
        const RatFunc linv = l.inverse();
        num_ = num_.scaled(linv);
        den_ = den_.scaled(linv);
    }
}

// Assemble an element already known to be in lowest terms, skipping the gcd
// pass of the public constructor; only the zero and monic-denominator
// normalizations remain.
ExactXT ExactXT::reduced(TPoly num, TPoly den) {
    ExactXT r(num.characteristic());
    if (num.is_zero())
        return r;
    const RatFunc l = den.lead();
    if (!l.is_one()) {
        const RatFunc linv = l.inverse();
        num = num.scaled(linv);
        den = den.scaled(linv);
    }
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
}

ExactXT ExactXT::operator-() const {
    ExactXT r = *this;
    r.num_ = -r.num_;
    return r;
}

ExactXT operator+(const ExactXT& a, const ExactXT& b) {
    if (a.characteristic() != b.characteristic())
        throw ring_mismatch("field element characteristic mismatch");
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    // Henrici's scheme: with both operands in lowest terms, any factor the
    // cross sum shares with the combined denominator divides g, so the one
    // large gcd over the full product denominator never has to happen.
    const TPoly g = tpoly_gcd(a.den_, b.den_);
    if (g.degree() == 0)
        return ExactXT::reduced(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    const TPoly d1 = tpoly_divrem(a.den_, g).q;
    const TPoly d2 = tpoly_divrem(b.den_, g).q;
    TPoly s = a.num_ * d2 + b.num_ * d1;
    if (s.is_zero())
        return ExactXT::zero(a.characteristic());
    const TPoly h = tpoly_gcd(s, g);
    if (h.degree() > 0)
        return ExactXT::reduced(tpoly_divrem(s, h).q, d1 * tpoly_divrem(b.den_, h).q);
    return ExactXT::reduced(std::move(s), d1 * b.den_);
}

ExactXT operator-(const ExactXT& a, const ExactXT& b) { return a + (-b); }

ExactXT operator*(const ExactXT& a, const ExactXT& b) {
    if (a.characteristic() != b.characteristic())
        throw ring_mismatch("field element characteristic mismatch");
    if (a.is_zero() || b.is_zero())
        return ExactXT::zero(a.characteristic());
    // cross-reduce before multiplying so the gcd work happens on the small
    // pieces; after it the product is itself in lowest terms
    const TPoly g1 = tpoly_gcd(a.num_, b.den_);
    const TPoly g2 = tpoly_gcd(b.num_, a.den_);
    TPoly an = g1.degree() > 0 ? tpoly_divrem(a.num_, g1).q : a.num_;
    TPoly bd = g1.degree() > 0 ? tpoly_divrem(b.den_, g1).q : b.den_;
    TPoly bn = g2.degree() > 0 ? tpoly_divrem(b.num_, g2).q : b.num_;
    TPoly ad = g2.degree() > 0 ? tpoly_divrem(a.den_, g2).q : a.den_;
    return ExactXT::reduced(an * bn, ad * bd);
}

ExactXT operator/(const ExactXT& a, const ExactXT& b) { return a * b.inverse(); }

ExactXT ExactXT::inverse() const {
    if (is_zero())
        throw non_unit_error("inverting the zero field element");
    return reduced(den_, num_);
}

int ExactXT::t_valuation() const {
    if (is_zero())
        throw input_error("t-valuation of the zero field element");
    return num_.t_valuation() - den_.t_valuation();
}

ExactXT ExactXT::derivative_x() const {
    return ExactXT(num_.derivative_x() * den_ - num_ * den_.derivative_x(), den_ * den_);
}

std::string ExactXT::str() const {
    if (den_ == TPoly::one(characteristic()))
        return num_.str();
    return "[" + num_.str() + "] / [" + den_.str() + "]";
}

// ----------------------------------------------------------- dvr_expand

bool dvr_model(const RingId& r) {
    if (r.is_global())
        return r.patch().is_empty_set() || r.patch().is_full();
    return r.local_kind() == LocalRing::R2 || r.local_kind() == LocalRing::R0;
}

namespace {

// t-polynomial as a truncated series over the model, coefficients converted
// to the model's representation; membership is enforced by the TElem
// constructor
TElem telem_of_tpoly(const TPoly& p, const RingId& model, int prec, int window) {
    std::vector<Coef> cs;
    cs.reserve(static_cast<size_t>(prec));
    for (int j = 0; j < prec; ++j) {
        const RatFunc c = p.coeff(j);
        if (model.laurent_coeffs())
            cs.emplace_back(series_expand(c, window));
        else
            cs.emplace_back(c);
    }
    return TElem(model, prec, std::move(cs));
}

ShiftedTElem normalize_shifted(ShiftedTElem s) {
    const std::optional<int> v = s.elem.t_valuation();
    if (v && *v > 0) {
        s.shift += *v;
        s.elem = s.elem.t_shifted(-*v);
    }
    return s;
}

} // namespace

ShiftedTElem dvr_expand(const ExactXT& e, const RingId& model, int prec, int window) {
    if (prec < 1)
        throw input_error("expansion precision must be positive");
    if (!dvr_model(model))
        throw input_error("expansion target " + model.str() +
                          " does not have field coefficients");
    if (e.is_zero())
        return {0, TElem::zero(model, prec)};
    const int vn = e.num().t_valuation();
    const int vd = e.den().t_valuation();
    const TElem nu = telem_of_tpoly(e.num().shifted(-vn), model, prec, window);
    const TElem du = telem_of_tpoly(e.den().shifted(-vd), model, prec, window);
    return {vn - vd, nu * du.invert_unit(window)};
}

// -------------------------------------------------------------- ExactMat

ExactMat::ExactMat(long chr, int rows, int cols)
    : chr_(chr), rows_(rows), cols_(cols),
      e_(static_cast<size_t>(rows) * cols, ExactXT::zero(chr)) {
    if (rows < 1 || cols < 1)
        throw input_error("matrix dimensions must be positive");
}

ExactMat::ExactMat(long chr, int rows, int cols, std::vector<ExactXT> entries)
    : chr_(chr), rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (rows < 1 || cols < 1)
        throw input_error("matrix dimensions must be positive");
    if (e_.size() != static_cast<size_t>(rows) * cols)
        throw input_error("matrix entry count does not match its shape");
    for (const ExactXT& x : e_)
        if (x.characteristic() != chr_)
            throw ring_mismatch("matrix entry characteristic mismatch");
}

ExactMat ExactMat::identity(long chr, int n) {
    ExactMat m(chr, n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = ExactXT::one(chr);
    return m;
}

ExactMat ExactMat::operator-() const {
    ExactMat r = *this;
    for (ExactXT& x : r.e_)
        x = -x;
    return r;
}

ExactMat operator+(const ExactMat& a, const ExactMat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw input_error("matrix shape mismatch in addition");
    ExactMat r = a;
    for (size_t i = 0; i < r.e_.size(); ++i)
        r.e_[i] += b.e_[i];
    return r;
}

ExactMat operator-(const ExactMat& a, const ExactMat& b) { return a + (-b); }

ExactMat operator*(const ExactMat& a, const ExactMat& b) {
    if (a.chr_ != b.chr_)
        throw ring_mismatch("matrix characteristic mismatch");
    if (a.cols_ != b.rows_)
        throw input_error("matrix shape mismatch in multiplication");
    ExactMat r(a.chr_, a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            if (a.at(i, k).is_zero())
                continue;
            for (int j = 0; j < b.cols_; ++j)
                r.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return r;
}

ExactMat ExactMat::transposed() const {
    ExactMat r(chr_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            r.at(j, i) = at(i, j);
    return r;
}

namespace {

ExactXT exact_det_minor(const ExactMat& m, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
    const size_t n = rows.size();
    if (n == 1)
        return m.at(rows[0], cols[0]);
    ExactXT acc = ExactXT::zero(m.characteristic());
    std::vector<int> sub(cols.begin() + 1, cols.end());
    for (size_t i = 0; i < n; ++i) {
        const ExactXT& piv = m.at(rows[i], cols[0]);
        if (!piv.is_zero()) {
            std::vector<int> rsub;
            rsub.reserve(n - 1);
            for (size_t k = 0; k < n; ++k)
                if (k != i)
                    rsub.push_back(rows[k]);
            ExactXT term = piv * exact_det_minor(m, rsub, sub);
            acc = (i % 2 == 0) ? acc + term : acc - term;
        }
    }
    return acc;
}

} // namespace

ExactXT ExactMat::det() const {
    if (rows_ != cols_)
        throw input_error("determinant of a non-square matrix");
    std::vector<int> idx(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i)
        idx[static_cast<size_t>(i)] = i;
    return exact_det_minor(*this, idx, idx);
}

ExactMat ExactMat::inverse() const {
    if (rows_ != cols_)
        throw input_error("inverse of a non-square matrix");
    const int n = rows_;

    // clear each row to a common polynomial denominator and run fraction-free
    // Gauss-Jordan on [P | diag(rowden)].  Every division below divides out
    // the previous pivot exactly (Sylvester identity), so no bivariate
    // fraction arithmetic happens until the final entries are assembled.
    std::vector<TPoly> rden;
    rden.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        TPoly d = TPoly::one(chr_);
        for (int j = 0; j < n; ++j) {
            const TPoly& dj = at(i, j).den();
            d = d * tpoly_divrem(dj, tpoly_gcd(d, dj)).q;
        }
        rden.push_back(std::move(d));
    }
    std::vector<TPoly> w(static_cast<size_t>(n) * 2 * static_cast<size_t>(n),
                         TPoly::zero(chr_));
    const auto W = [&](int i, int j) -> TPoly& {
        return w[static_cast<size_t>(i) * 2 * static_cast<size_t>(n) + j];
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            W(i, j) = at(i, j).num() * tpoly_divrem(rden[i], at(i, j).den()).q;
        W(i, n + i) = rden[i];
    }

    TPoly prev = TPoly::one(chr_);
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (!W(i, k).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0)
            throw non_unit_error("matrix is exactly singular");
        if (piv != k)
            for (int j = 0; j < 2 * n; ++j)
                std::swap(W(piv, j), W(k, j));
        const TPoly pk = W(k, k);
        for (int i = 0; i < n; ++i) {
            if (i == k)
                continue;
            const TPoly fik = W(i, k);
            for (int j = 0; j < 2 * n; ++j) {
                if (j == k)
                    continue;
                TPolyDivRem dr = tpoly_divrem(pk * W(i, j) - fik * W(k, j), prev);
                if (!dr.r.is_zero())
                    throw error("internal: fraction-free elimination left a remainder");
                W(i, j) = std::move(dr.q);
            }
            W(i, k) = TPoly::zero(chr_);
        }
        prev = pk;
    }

    // left block is now det P times the identity, right block det P times the
    // solution of P X = diag(rowden), which is the inverse sought
    ExactMat inv(chr_, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            inv.at(i, j) = ExactXT(W(i, n + j), W(i, i));
    return inv;
}

ExactMat ExactMat::derivative_x() const {
    ExactMat r = *this;
    for (ExactXT& x : r.e_)
        x = x.derivative_x();
    return r;
}

std::string ExactMat::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (int j = 0; j < cols_; ++j)
            os << (j ? ", " : "[ ") << at(i, j).str();
        os << " ]" << (i + 1 == rows_ ? "]" : "\n");
    }
    return os.str();
}

ShiftedTMatrix dvr_expand(const ExactMat& m, const RingId& model, int prec, int window) {
    if (prec < 1)
        throw input_error("expansion precision must be positive");
    int shift = 0;
    bool seen = false;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (m.at(i, j).is_zero())
                continue;
            const int v = m.at(i, j).t_valuation();
            shift = seen ? std::min(shift, v) : v;
            seen = true;
        }
    TMatrix out(model, prec, m.rows(), m.cols());
    if (!seen)
        return {0, std::move(out)};
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const ExactXT& e = m.at(i, j);
            if (e.is_zero())
                continue;
            const int d = e.t_valuation() - shift;
            if (d >= prec)
                continue; // vanishes modulo t^prec after the shift
            const ShiftedTElem u = dvr_expand(e, model, prec - d, window);
            out.at(i, j) = u.elem.t_shifted(d);
        }
    return {shift, std::move(out)};
}

// --------------------------------------------------------------- FMatrix

FMatrix FMatrix::identity(long chr, int n) { return FMatrix(chr, n, {}); }

FMatrix FMatrix::of(TMatrix m, int exp) {
    if (m.rows() != m.cols())
        throw input_error("factored matrices must be square");
    if (exp != 1 && exp != -1)
        throw input_error("factor exponents must be +1 or -1");
    const long chr = m.ring().characteristic();
    const int n = m.rows();
    std::vector<Factor> f;
    f.push_back(Factor{std::move(m), exp});
    return FMatrix(chr, n, std::move(f));
}

FMatrix FMatrix::of(ExactMat m, int exp) {
    if (m.rows() != m.cols())
        throw input_error("factored matrices must be square");
    if (exp != 1 && exp != -1)
        throw input_error("factor exponents must be +1 or -1");
    const long chr = m.characteristic();
    const int n = m.rows();
    std::vector<Factor> f;
    f.push_back(Factor{std::move(m), exp});
    return FMatrix(chr, n, std::move(f));
}

FMatrix FMatrix::inverse() const {
    std::vector<Factor> f;
    f.reserve(f_.size());
    for (auto it = f_.rbegin(); it != f_.rend(); ++it)
        f.push_back(Factor{it->m, -it->exp});
    return FMatrix(chr_, n_, std::move(f));
}

FMatrix FMatrix::times(const FMatrix& o) const {
    if (chr_ != o.chr_)
        throw ring_mismatch("factored matrix characteristic mismatch");
    if (n_ != o.n_)
        throw input_error("factored matrix dimension mismatch");
    std::vector<Factor> f = f_;
    f.insert(f.end(), o.f_.begin(), o.f_.end());
    return FMatrix(chr_, n_, std::move(f));
}

namespace {

// inverse of an embedded truncated factor: unit determinants invert in
// place; det = t^v * unit inverts through the adjugate with an explicit
// t^{-v} prefactor and precision loss v
ShiftedTMatrix invert_embedded(const TMatrix& m, int window) {
    const TElem d = m.det();
    const std::optional<int> v = d.t_valuation();
    if (!v)
        throw singular_at_precision("factor determinant vanishes modulo t^" +
                                    std::to_string(d.prec()));
    if (*v == 0)
        return {0, m.inverse_unit(window)};
    const TElem duinv = d.t_shifted(-*v).invert_unit(window);
    return {-*v, m.adjugate().scaled(duinv)};
}

} // namespace

ShiftedTMatrix FMatrix::flatten(const RingId& model, int prec, int window) const {
    if (!dvr_model(model))
        throw input_error("flattening target " + model.str() +
                          " does not have field coefficients");
    ShiftedTMatrix acc{0, TMatrix::identity(model, prec, n_)};
    for (const Factor& f : f_) {
        ShiftedTMatrix part = [&]() -> ShiftedTMatrix {
            if (const ExactMat* em = std::get_if<ExactMat>(&f.m)) {
                if (f.exp == 1)
                    return dvr_expand(*em, model, prec, window);
                // inverting through the series expansion skips bivariate
                // fraction arithmetic; it is loss free exactly when the
                // normalized determinant is a unit, otherwise the exact
                // inverse keeps its no-loss guarantee
                ShiftedTMatrix fwd = dvr_expand(*em, model, prec, window);
                const std::optional<int> dv = fwd.mat.det().t_valuation();
                if (dv && *dv == 0)
                    return {-fwd.shift, fwd.mat.inverse_unit(window)};
                return dvr_expand(em->inverse(), model, prec, window);
            }
            const TMatrix& tm = std::get<TMatrix>(f.m);
            TMatrix moved = tm.ring() == model ? tm : embed(tm, model, window);
            if (f.exp == 1)
                return ShiftedTMatrix{0, std::move(moved)};
            return invert_embedded(moved, window);
        }();
        acc.shift += part.shift;
        acc.mat = acc.mat * part.mat;
    }
    return acc;
}

std::string FMatrix::str() const {
    if (f_.empty())
        return "I_" + std::to_string(n_);
    std::ostringstream os;
    for (size_t i = 0; i < f_.size(); ++i) {
        if (i)
            os << " * ";
        os << (std::holds_alternative<ExactMat>(f_[i].m) ? "exact" : "series") << "["
           << i << "]";
        if (f_[i].exp < 0)
            os << "^-1";
    }
    return os.str();
}

// ----------------------------------------------------------------- FElem

FElem FElem::of_exact(ExactXT e) { return FElem(Form{std::move(e)}); }

FElem FElem::of_telem(TElem num) {
    TElem den = TElem::one(num.ring(), num.prec());
    return FElem(Form{Quot{std::move(num), std::move(den)}});
}

FElem FElem::quotient(TElem num, TElem den) {
    if (!(num.ring() == den.ring()))
        throw ring_mismatch("quotient numerator and denominator rings differ");
    if (den.is_zero_at_precision())
        throw non_unit_error("quotient denominator vanishes at precision");
    return FElem(Form{Quot{std::move(num), std::move(den)}});
}

FElem FElem::product(std::vector<std::pair<FElem, int>> factors) {
    if (factors.empty())
        throw input_error("empty product form");
    for (const auto& [f, e] : factors)
        if (e != 1 && e != -1)
            throw input_error("factor exponents must be +1 or -1");
    return FElem(Form{Prod{std::move(factors)}});
}

long FElem::characteristic() const {
    if (const ExactXT* e = std::get_if<ExactXT>(&form_))
        return e->characteristic();
    if (const Quot* q = std::get_if<Quot>(&form_))
        return q->num.ring().characteristic();
    return std::get<Prod>(form_).fs.front().first.characteristic();
}

FElem FElem::inverse() const {
    if (const ExactXT* e = std::get_if<ExactXT>(&form_))
        return of_exact(e->inverse());
    if (const Quot* q = std::get_if<Quot>(&form_)) {
        if (q->num.is_zero_at_precision())
            throw non_unit_error("inverting an element that vanishes at precision");
        return FElem(Form{Quot{q->den, q->num}});
    }
    const Prod& p = std::get<Prod>(form_);
    std::vector<std::pair<FElem, int>> fs;
    fs.reserve(p.fs.size());
    for (auto it = p.fs.rbegin(); it != p.fs.rend(); ++it)
        fs.emplace_back(it->first, -it->second);
    return FElem(Form{Prod{std::move(fs)}});
}

FElem FElem::times(const FElem& o) const {
    std::vector<std::pair<FElem, int>> fs;
    if (const Prod* p = std::get_if<Prod>(&form_))
        fs = p->fs;
    else
        fs.emplace_back(*this, 1);
    if (const Prod* p = std::get_if<Prod>(&o.form_))
        fs.insert(fs.end(), p->fs.begin(), p->fs.end());
    else
        fs.emplace_back(o, 1);
    return FElem(Form{Prod{std::move(fs)}});
}

ShiftedTElem FElem::realize(const RingId& model, int prec, int window) const {
    if (!dvr_model(model))
        throw input_error("realization target " + model.str() +
                          " does not have field coefficients");
    if (const ExactXT* e = std::get_if<ExactXT>(&form_))
        return dvr_expand(*e, model, prec, window);
    if (const Quot* q = std::get_if<Quot>(&form_)) {
        const TElem num = q->num.ring() == model ? q->num : embed(q->num, model, window);
        const TElem den = q->den.ring() == model ? q->den : embed(q->den, model, window);
        const std::optional<int> v = den.t_valuation();
        if (!v)
            throw singular_at_precision("denominator vanishes modulo t^" +
                                        std::to_string(den.prec()));
        const TElem duinv = den.t_shifted(-*v).invert_unit(window);
        return normalize_shifted({-*v, num.truncated(std::min(num.prec(), prec)) * duinv});
    }
    const Prod& p = std::get<Prod>(form_);
    ShiftedTElem acc{0, TElem::one(model, prec)};
    for (const auto& [f, e] : p.fs) {
        ShiftedTElem part = normalize_shifted(f.realize(model, prec, window));
        if (e < 0) {
            if (part.elem.is_zero_at_precision())
                throw non_unit_error("inverting a factor that vanishes at precision");
            part = ShiftedTElem{-part.shift, part.elem.invert_unit(window)};
        }
        acc.shift += part.shift;
        acc.elem *= part.elem;
    }
    return normalize_shifted(std::move(acc));
}

std::string FElem::str() const {
    if (const ExactXT* e = std::get_if<ExactXT>(&form_))
        return e->str();
    if (const Quot* q = std::get_if<Quot>(&form_))
        return "(" + q->num.str() + ") / (" + q->den.str() + ")";
    const Prod& p = std::get<Prod>(form_);
    std::ostringstream os;
    for (size_t i = 0; i < p.fs.size(); ++i) {
        if (i)
            os << " * ";
        os << "(" << p.fs[i].first.str() << ")";
        if (p.fs[i].second < 0)
            os << "^-1";
    }
    return os.str();
}

} // namespace fieldpatch
