#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace fieldpatch {

// Gaussian elimination over an exact field F (Scalar or RatFunc here).
// Solves M q = rhs; returns nullopt when inconsistent.  Underdetermined
// systems pick the solution with free variables set to zero, so the result
// is deterministic.
template <class F>
std::optional<std::vector<F>> solve_linear(std::vector<std::vector<F>> m, std::vector<F> rhs,
                                           const F& zero, const F& one) {
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == zero)
            ++p;
        if (p == rows)
            continue;
        std::swap(m[p], m[r]);
        std::swap(rhs[p], rhs[r]);
        const F inv = one / m[r][c];
        for (size_t j = c; j < cols; ++j)
            m[r][j] = m[r][j] * inv;
        rhs[r] = rhs[r] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == zero)
                continue;
            const F f = m[i][c];
            for (size_t j = c; j < cols; ++j)
                m[i][j] = m[i][j] - f * m[r][j];
            rhs[i] = rhs[i] - f * rhs[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (!(rhs[i] == zero))
            return std::nullopt;
    std::vector<F> q(cols, zero);
    for (size_t i = 0; i < pivot_col.size(); ++i)
        q[pivot_col[i]] = rhs[i];
    return q;
}

// Rational reconstruction in t from a truncated series.  Finds P, Q with
// deg P <= dnum, deg Q <= dden, Q(0) = 1 and Q * series == P mod t^N, where
// N is the length of `series`.  Verified by cross multiplication before
// returning; nullopt when no such pair exists at these bounds.
template <class F>
std::optional<std::pair<std::vector<F>, std::vector<F>>>
pade_reconstruct_series(const std::vector<F>& series, int dnum, int dden, const F& zero,
                        const F& one) {
    const int n = static_cast<int>(series.size());
    if (dnum < 0 || dden < 0 || n <= 0)
        return std::nullopt;
    // unknowns q_1..q_dden with q_0 = 1; rows k = dnum+1 .. n-1 demand
    // (Q * series)_k = 0
    std::vector<std::vector<F>> m;
    std::vector<F> rhs;
    for (int k = dnum + 1; k < n; ++k) {
        std::vector<F> row(static_cast<size_t>(dden), zero);
        for (int j = 1; j <= dden; ++j)
            if (k - j >= 0)
                row[j - 1] = series[k - j];
        m.push_back(std::move(row));
        rhs.push_back(zero - series[k]);
    }
    auto q = solve_linear(std::move(m), std::move(rhs), zero, one);
    if (!q)
        return std::nullopt;
    std::vector<F> qq(static_cast<size_t>(dden) + 1, zero);
    qq[0] = one;
    for (int j = 1; j <= dden; ++j)
        qq[j] = (*q)[j - 1];
    // P = Q * series truncated below t^(dnum+1); then re-verify the full
    // congruence, including the constrained rows
    std::vector<F> pp(static_cast<size_t>(dnum) + 1, zero);
    for (int k = 0; k < n; ++k) {
        F acc = zero;
        for (int j = 0; j <= std::min(k, dden); ++j)
            acc = acc + qq[j] * series[k - j];
        if (k <= dnum)
            pp[k] = acc;
        else if (!(acc == zero))
            return std::nullopt;
    }
    while (pp.size() > 1 && pp.back() == zero)
        pp.pop_back();
    while (qq.size() > 1 && qq.back() == zero)
        qq.pop_back();
    return std::make_pair(std::move(pp), std::move(qq));
}

} // namespace fieldpatch
