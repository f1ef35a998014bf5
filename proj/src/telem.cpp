#include "fieldpatch/telem.hpp"

#include <climits>
#include <sstream>

namespace fieldpatch {

namespace {

template <class F>
Coef coef_zip(const Coef& a, const Coef& b, F f) {
    if (a.index() != b.index())
        throw ring_mismatch("mixing exact and windowed coefficients");
    if (std::holds_alternative<RatFunc>(a))
        return f(std::get<RatFunc>(a), std::get<RatFunc>(b));
    return f(std::get<TruncLaurent>(a), std::get<TruncLaurent>(b));
}

} // namespace

Coef coef_zero(const RingId& ring) {
    if (ring.laurent_coeffs())
        return TruncLaurent::zero(ring.characteristic());
    return RatFunc::zero(ring.characteristic());
}

Coef coef_one(const RingId& ring) {
    if (ring.laurent_coeffs())
        return TruncLaurent::one(ring.characteristic());
    return RatFunc::one(ring.characteristic());
}

Coef coef_add(const Coef& a, const Coef& b) {
    return coef_zip(a, b, [](const auto& x, const auto& y) -> Coef { return x + y; });
}

Coef coef_sub(const Coef& a, const Coef& b) {
    return coef_zip(a, b, [](const auto& x, const auto& y) -> Coef { return x - y; });
}

Coef coef_mul(const Coef& a, const Coef& b) {
    return coef_zip(a, b, [](const auto& x, const auto& y) -> Coef { return x * y; });
}

Coef coef_neg(const Coef& a) {
    return std::visit([](const auto& x) -> Coef { return -x; }, a);
}

Coef coef_scale(const Coef& a, const Scalar& s) {
    return std::visit([&](const auto& x) -> Coef { return x.scaled(s); }, a);
}

bool coef_known_zero(const Coef& a) {
    if (std::holds_alternative<RatFunc>(a))
        return std::get<RatFunc>(a).is_zero();
    return std::get<TruncLaurent>(a).known_zero();
}

std::string coef_str(const Coef& a) {
    return std::visit([](const auto& x) { return x.str(); }, a);
}

TElem::TElem(RingId ring, int prec, std::vector<Coef> coeffs)
    : ring_(std::move(ring)), prec_(prec), c_(std::move(coeffs)) {
    if (prec_ < 1)
        throw input_error("t-adic precision must be positive");
    c_.resize(static_cast<size_t>(prec_), coef_zero(ring_));
    std::string why;
    if (!members_ok(&why))
        throw membership_error("coefficient outside its ring: " + why);
}

TElem TElem::zero(const RingId& ring, int prec) { return TElem(ring, prec, {}); }

TElem TElem::one(const RingId& ring, int prec) {
    return TElem(ring, prec, {coef_one(ring)});
}

TElem TElem::of_coef(const RingId& ring, int prec, Coef c0) {
    std::vector<Coef> c;
    c.push_back(std::move(c0));
    return TElem(ring, prec, std::move(c));
}

const Coef& TElem::coef(int j) const {
    if (j < 0 || j >= prec_)
        throw error("t-coefficient index out of range");
    return c_[static_cast<size_t>(j)];
}

bool TElem::members_ok(std::string* why) const {
    for (int j = 0; j < prec_; ++j) {
        const bool ok = std::visit([&](const auto& x) { return ring_.admits(x); }, c_[j]);
        if (!ok) {
            if (why)
                *why = "t^" + std::to_string(j) + " coefficient " + coef_str(c_[j]) +
                       " not in " + ring_.str();
            return false;
        }
    }
    return true;
}

TElem TElem::operator-() const {
    std::vector<Coef> c;
    c.reserve(c_.size());
    for (const auto& x : c_)
        c.push_back(coef_neg(x));
    return TElem(ring_, prec_, std::move(c));
}

TElem operator+(const TElem& a, const TElem& b) {
    a.check_ring(b);
    const int p = std::min(a.prec_, b.prec_);
    std::vector<Coef> c;
    c.reserve(static_cast<size_t>(p));
    for (int j = 0; j < p; ++j)
        c.push_back(coef_add(a.c_[j], b.c_[j]));
    return TElem(a.ring_, p, std::move(c));
}

TElem operator-(const TElem& a, const TElem& b) { return a + (-b); }

TElem operator*(const TElem& a, const TElem& b) {
    a.check_ring(b);
    const int p = std::min(a.prec_, b.prec_);
    std::vector<Coef> c(static_cast<size_t>(p), coef_zero(a.ring_));
    for (int i = 0; i < p; ++i) {
        if (coef_known_zero(a.c_[i]))
            continue;
        for (int j = 0; i + j < p; ++j) {
            if (coef_known_zero(b.c_[j]))
                continue;
            c[i + j] = coef_add(c[i + j], coef_mul(a.c_[i], b.c_[j]));
        }
    }
    return TElem(a.ring_, p, std::move(c));
}

TElem TElem::scaled(const Scalar& s) const {
    std::vector<Coef> c;
    c.reserve(c_.size());
    for (const auto& x : c_)
        c.push_back(coef_scale(x, s));
    return TElem(ring_, prec_, std::move(c));
}

TElem TElem::scaled_coef(const Coef& m) const {
    std::vector<Coef> c;
    c.reserve(c_.size());
    for (const auto& x : c_)
        c.push_back(coef_mul(x, m));
    return TElem(ring_, prec_, std::move(c));
}

std::optional<int> TElem::t_valuation() const {
    for (int j = 0; j < prec_; ++j)
        if (!coef_known_zero(c_[j]))
            return j;
    return std::nullopt;
}

TElem TElem::t_shifted(int k) const {
    if (k == 0)
        return *this;
    std::vector<Coef> c;
    if (k > 0) {
        c.assign(static_cast<size_t>(k), coef_zero(ring_));
        c.insert(c.end(), c_.begin(), c_.end());
    } else {
        for (int j = 0; j < -k; ++j)
            if (j < prec_ && !coef_known_zero(c_[j]))
                throw error("t-shift would discard a nonzero coefficient");
        if (prec_ + k < 1)
            throw error("t-shift leaves no precision");
        c.assign(c_.begin() + std::min<long>(-k, prec_), c_.end());
    }
    return TElem(ring_, prec_ + k, std::move(c));
}

TElem TElem::truncated(int prec) const {
    if (prec >= prec_)
        return *this;
    std::vector<Coef> c(c_.begin(), c_.begin() + prec);
    return TElem(ring_, prec, std::move(c));
}

TElem TElem::invert_unit(int wantx) const {
    const bool unit =
        std::visit([&](const auto& x) { return ring_.unit_residue(x); }, c_[0]);
    if (!unit)
        throw non_unit_error("residue mod t is not a unit of " + ring_.str() + ": " +
                             coef_str(c_[0]));
    Coef c0inv;
    if (std::holds_alternative<RatFunc>(c_[0]))
        c0inv = std::get<RatFunc>(c_[0]).inverse();
    else
        c0inv = std::get<TruncLaurent>(c_[0]).inverse(wantx);
    std::vector<Coef> b(static_cast<size_t>(prec_), coef_zero(ring_));
    b[0] = c0inv;
    for (int j = 1; j < prec_; ++j) {
        Coef acc = coef_zero(ring_);
        for (int i = 1; i <= j; ++i) {
            if (coef_known_zero(c_[i]))
                continue;
            acc = coef_add(acc, coef_mul(c_[i], b[j - i]));
        }
        b[j] = coef_neg(coef_mul(c0inv, acc));
    }
    return TElem(ring_, prec_, std::move(b));
}

bool TElem::is_zero_at_precision() const { return !t_valuation().has_value(); }

int TElem::x_window() const {
    int w = TruncLaurent::kExact;
    for (const auto& c : c_)
        if (std::holds_alternative<TruncLaurent>(c))
            w = std::min(w, std::get<TruncLaurent>(c).known_to());
    return w;
}

std::string TElem::str() const {
    std::ostringstream os;
    bool first = true;
    for (int j = 0; j < prec_; ++j) {
        if (coef_known_zero(c_[j]))
            continue;
        if (!first)
            os << " + ";
        first = false;
        os << "(" << coef_str(c_[j]) << ")";
        if (j == 1)
            os << "*t";
        else if (j > 1)
            os << "*t^" << j;
    }
    if (first)
        os << "0";
    os << " + O(t^" << prec_ << ")";
    return os.str();
}

TElem embed(const TElem& a, const RingId& into, int window) {
    if (a.ring() == into)
        return a;
    if (!embeddable(a.ring(), into))
        throw ring_mismatch("no inclusion from " + a.ring().str() + " into " + into.str());
    std::vector<Coef> c;
    c.reserve(static_cast<size_t>(a.prec()));
    for (int j = 0; j < a.prec(); ++j) {
        const Coef& src = a.coef(j);
        Coef dst;
        if (into.laurent_coeffs()) {
            if (std::holds_alternative<RatFunc>(src))
                dst = series_expand(std::get<RatFunc>(src), window);
            else
                dst = src;
        } else {
            if (!std::holds_alternative<RatFunc>(src))
                throw ring_mismatch("windowed coefficients cannot re-enter an exact model");
            dst = src;
        }
        const bool ok = std::visit([&](const auto& x) { return into.admits(x); }, dst);
        if (!ok)
            throw membership_error("t^" + std::to_string(j) + " coefficient " +
                                   coef_str(src) + " does not lie in " + into.str());
        c.push_back(std::move(dst));
    }
    return TElem(into, a.prec(), std::move(c));
}

TMatrix::TMatrix(RingId ring, int prec, int rows, int cols)
    : ring_(std::move(ring)), prec_(prec), rows_(rows), cols_(cols),
      e_(static_cast<size_t>(rows) * cols, TElem::zero(ring_, prec)) {}

TMatrix::TMatrix(RingId ring, int prec, int rows, int cols, std::vector<TElem> entries)
    : ring_(std::move(ring)), prec_(prec), rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != static_cast<size_t>(rows_) * cols_)
        throw input_error("matrix entry count mismatch");
    for (auto& x : e_) {
        if (!(x.ring() == ring_))
            throw ring_mismatch("matrix entry ring tag mismatch");
        x = x.truncated(prec_);
        if (x.prec() < prec_)
            throw input_error("matrix entry precision below matrix precision");
    }
}

TMatrix TMatrix::identity(const RingId& ring, int prec, int n) {
    TMatrix m(ring, prec, n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = TElem::one(ring, prec);
    return m;
}

bool TMatrix::members_ok(std::string* why) const {
    for (const auto& x : e_)
        if (!x.members_ok(why))
            return false;
    return true;
}

TMatrix TMatrix::operator-() const {
    return map([](const TElem& x) { return -x; });
}

TMatrix operator+(const TMatrix& a, const TMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw input_error("matrix shape mismatch");
    TMatrix r(a.ring_, std::min(a.prec_, b.prec_), a.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < a.cols_; ++j)
            r.at(i, j) = a.at(i, j) + b.at(i, j);
    return r;
}

TMatrix operator-(const TMatrix& a, const TMatrix& b) { return a + (-b); }

TMatrix operator*(const TMatrix& a, const TMatrix& b) {
    if (a.cols_ != b.rows_)
        throw input_error("matrix shape mismatch");
    TMatrix r(a.ring_, std::min(a.prec_, b.prec_), a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) {
            TElem acc = TElem::zero(a.ring_, r.prec_);
            for (int k = 0; k < a.cols_; ++k)
                acc += a.at(i, k) * b.at(k, j);
            r.at(i, j) = acc;
        }
    return r;
}

TMatrix TMatrix::scaled(const TElem& s) const {
    return map([&](const TElem& x) { return x * s; });
}

TMatrix TMatrix::t_shifted(int k) const {
    TMatrix r(ring_, prec_ + k, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            r.at(i, j) = at(i, j).t_shifted(k);
    return r;
}

TMatrix TMatrix::truncated(int prec) const {
    if (prec >= prec_)
        return *this;
    TMatrix r(ring_, prec, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            r.at(i, j) = at(i, j).truncated(prec);
    return r;
}

TMatrix TMatrix::transposed() const {
    TMatrix r(ring_, prec_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            r.at(j, i) = at(i, j);
    return r;
}

namespace {

TElem det_minor(const TMatrix& m, std::vector<int> rows, std::vector<int> cols) {
    const int n = static_cast<int>(rows.size());
    if (n == 1)
        return m.at(rows[0], cols[0]);
    TElem acc = TElem::zero(m.ring(), m.prec());
    for (int k = 0; k < n; ++k) {
        std::vector<int> subrows(rows.begin() + 1, rows.end());
        std::vector<int> subcols;
        for (int j = 0; j < n; ++j)
            if (j != k)
                subcols.push_back(cols[j]);
        TElem term = m.at(rows[0], cols[k]) * det_minor(m, subrows, subcols);
        if (k % 2)
            term = -term;
        acc += term;
    }
    return acc;
}

} // namespace

TElem TMatrix::det() const {
    if (rows_ != cols_)
        throw input_error("determinant of a non-square matrix");
    std::vector<int> idx;
    for (int i = 0; i < rows_; ++i)
        idx.push_back(i);
    return det_minor(*this, idx, idx);
}

TMatrix TMatrix::adjugate() const {
    if (rows_ != cols_)
        throw input_error("adjugate of a non-square matrix");
    const int n = rows_;
    TMatrix adj(ring_, prec_, n, n);
    if (n == 1) {
        adj.at(0, 0) = TElem::one(ring_, prec_);
        return adj;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> rs, cs;
            for (int k = 0; k < n; ++k) {
                if (k != i)
                    rs.push_back(k);
                if (k != j)
                    cs.push_back(k);
            }
            TElem c = det_minor(*this, rs, cs);
            if ((i + j) % 2)
                c = -c;
            adj.at(j, i) = c;
        }
    return adj;
}

std::optional<int> TMatrix::t_valuation() const {
    std::optional<int> v;
    for (const auto& x : e_) {
        const auto w = x.t_valuation();
        if (w && (!v || *w < *v))
            v = w;
    }
    return v;
}

bool TMatrix::is_zero_at_precision() const { return !t_valuation().has_value(); }

int TMatrix::x_window() const {
    int w = TruncLaurent::kExact;
    for (const auto& x : e_)
        w = std::min(w, x.x_window());
    return w;
}

TMatrix TMatrix::inverse_unit(int wantx) const {
    const TElem d = det();
    const auto v = d.t_valuation();
    if (!v)
        throw singular_at_precision("determinant vanishes mod t^" + std::to_string(prec_));
    if (*v > 0)
        throw non_unit_error("determinant has positive t-valuation " + std::to_string(*v));
    const TElem dinv = d.invert_unit(wantx);
    return adjugate().map([&](const TElem& x) { return x * dinv; });
}

TMatrix TMatrix::map(const std::function<TElem(const TElem&)>& f) const {
    std::vector<TElem> out;
    out.reserve(e_.size());
    int p = prec_;
    for (const auto& x : e_) {
        out.push_back(f(x));
        p = std::min(p, out.back().prec());
    }
    if (out.empty())
        return TMatrix(ring_, prec_, rows_, cols_);
    RingId r = out.front().ring();
    return TMatrix(std::move(r), p, rows_, cols_, std::move(out));
}

std::string TMatrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << "[ ";
        for (int j = 0; j < cols_; ++j)
            os << at(i, j).str() << (j + 1 < cols_ ? " | " : "");
        os << " ]\n";
    }
    return os.str();
}

TMatrix embed(const TMatrix& a, const RingId& into, int window) {
    if (a.ring() == into)
        return a;
    std::vector<TElem> out;
    out.reserve(static_cast<size_t>(a.rows()) * a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.push_back(embed(a.at(i, j), into, window));
    return TMatrix(into, a.prec(), a.rows(), a.cols(), std::move(out));
}

int rank_at_precision(TMatrix m) {
    int rank = 0;
    int row0 = 0;
    std::vector<bool> used(static_cast<size_t>(m.cols()), false);
    while (row0 < m.rows()) {
        int bi = -1, bj = -1, bv = INT_MAX;
        for (int i = row0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                if (used[static_cast<size_t>(j)])
                    continue;
                const auto v = m.at(i, j).t_valuation();
                if (v && *v < bv) {
                    bv = *v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0)
            break;
        if (bi != row0)
            for (int j = 0; j < m.cols(); ++j)
                std::swap(m.at(bi, j), m.at(row0, j));
        const TElem pinv = m.at(row0, bj).t_shifted(-bv).invert_unit(2 * m.prec());
        for (int i = row0 + 1; i < m.rows(); ++i) {
            if (!m.at(i, bj).t_valuation())
                continue;
            const TElem factor = m.at(i, bj).t_shifted(-bv) * pinv;
            for (int j = 0; j < m.cols(); ++j) {
                const TElem scaledpiv = (factor * m.at(row0, j).t_shifted(-bv)).t_shifted(bv);
                m.at(i, j) = m.at(i, j).truncated(scaledpiv.prec()) - scaledpiv;
            }
        }
        used[static_cast<size_t>(bj)] = true;
        ++rank;
        ++row0;
    }
    return rank;
}

int kernel_dimension_at_precision(const TMatrix& m) {
    return m.cols() - rank_at_precision(m);
}

} // namespace fieldpatch
