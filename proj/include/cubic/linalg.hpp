#pragma once

// Exact Gaussian elimination over a field scalar (Rational or RatFn).

#include "cubic/scalar.hpp"

#include <utility>
#include <vector>

namespace cubic {

/// Reduced row echelon form in place; returns pivot columns.
template <class S>
std::vector<Eigen::Index> rref_inplace(Mat<S>& m) {
    std::vector<Eigen::Index> piv;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < m.cols() && r < m.rows(); ++c) {
        Eigen::Index p = r;
        while (p < m.rows() && m(p, c) == S(0)) ++p;
        if (p == m.rows()) continue;
        if (p != r) m.row(p).swap(m.row(r));
        const S inv = S(1) / m(r, c);
        for (Eigen::Index j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == S(0)) continue;
            const S f = m(i, c);
            for (Eigen::Index j = c; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

template <class S>
Mat<S> rref(Mat<S> m) {
    auto piv = rref_inplace(m);
    return m.topRows(static_cast<Eigen::Index>(piv.size())).eval();
}

template <class S>
Eigen::Index rank(Mat<S> m) {
    return static_cast<Eigen::Index>(rref_inplace(m).size());
}

/// Columns form a basis of {x : m x = 0}.
template <class S>
Mat<S> kernel(Mat<S> m) {
    auto piv = rref_inplace(m);
    const Eigen::Index n = m.cols();
    std::vector<char> is_piv(static_cast<std::size_t>(n), 0);
    for (auto c : piv) is_piv[static_cast<std::size_t>(c)] = 1;
    Mat<S> k(n, n - static_cast<Eigen::Index>(piv.size()));
    for (Eigen::Index i = 0; i < k.rows(); ++i)
        for (Eigen::Index j = 0; j < k.cols(); ++j) k(i, j) = S(0);
    Eigen::Index col = 0;
    for (Eigen::Index f = 0; f < n; ++f) {
        if (is_piv[static_cast<std::size_t>(f)]) continue;
        k(f, col) = S(1);
        for (std::size_t r = 0; r < piv.size(); ++r) k(piv[r], col) = -m(static_cast<Eigen::Index>(r), f);
        ++col;
    }
    return k;
}

/// Solves m x = b; returns false when inconsistent. Free variables are 0.
template <class S>
bool solve(const Mat<S>& m, const Vec<S>& b, Vec<S>& x) {
    Mat<S> aug(m.rows(), m.cols() + 1);
    aug << m, b;
    auto piv = rref_inplace(aug);
    if (!piv.empty() && piv.back() == m.cols()) return false;
    x = Vec<S>(m.cols());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = S(0);
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(static_cast<Eigen::Index>(r), m.cols());
    return true;
}

template <class S>
S det3(const Mat<S>& m, int c0, int c1, int c2) {
    auto a = [&](int r, int c) -> const S& { return m(r, c); };
    return a(0, c0) * (a(1, c1) * a(2, c2) - a(1, c2) * a(2, c1)) -
           a(0, c1) * (a(1, c0) * a(2, c2) - a(1, c2) * a(2, c0)) +
           a(0, c2) * (a(1, c0) * a(2, c1) - a(1, c1) * a(2, c0));
}

/// Rank of an integer matrix (computed over Q).
Eigen::Index int_rank(const IntMat& m);
/// Primitive integer basis of the rational kernel (columns).
IntMat int_kernel(const IntMat& m);
/// Row space canonical form: RREF over Q with each row scaled primitive.
IntMat row_space_key(const IntMat& rows);

} // namespace cubic
