#pragma once

#include "lieks/exact.hpp"

#include <optional>
#include <vector>

namespace lieks {

template <class T>
using VecT = std::vector<T>;
template <class T>
using MatT = std::vector<std::vector<T>>;  // row-major, rows of equal length

using Vec = VecT<Scalar>;
using Mat = MatT<Scalar>;
using QVec = VecT<mpq_class>;
using QMat = MatT<mpq_class>;

template <class T>
MatT<T> zero_mat(std::size_t r, std::size_t c) {
    return MatT<T>(r, VecT<T>(c, T(0)));
}

template <class T>
MatT<T> identity_mat(std::size_t n) {
    auto m = zero_mat<T>(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = T(1);
    return m;
}

template <class T>
bool is_zero_vec(const VecT<T>& v) {
    for (const auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}

// In-place reduced row echelon form. Returns pivot columns.
template <class T>
std::vector<std::size_t> rref(MatT<T>& m, std::size_t ncols_limit = static_cast<std::size_t>(-1)) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = std::min(m[0].size(), ncols_limit);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t best = rows;
        std::size_t best_cx = 0;
        for (std::size_t i = r; i < rows; ++i) {
            if (is_zero(m[i][c])) continue;
            std::size_t cx = complexity(m[i][c]);
            if (best == rows || cx < best_cx) {
                best = i;
                best_cx = cx;
                if (cx <= 1) break;
            }
        }
        if (best == rows) continue;
        std::swap(m[r], m[best]);
        T inv = T(1) / m[r][c];
        for (std::size_t j = c; j < m[r].size(); ++j)
            if (!is_zero(m[r][j])) m[r][j] = m[r][j] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || is_zero(m[i][c])) continue;
            T f = m[i][c];
            for (std::size_t j = c; j < m[i].size(); ++j)
                if (!is_zero(m[r][j])) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
std::size_t rank(MatT<T> m) {
    return rref(m).size();
}

// Basis of {x : m x = 0}.
template <class T>
MatT<T> nullspace(MatT<T> m, std::size_t ncols) {
    if (m.empty()) {
        return identity_mat<T>(ncols);
    }
    auto piv = rref(m);
    std::vector<int> is_piv(ncols, -1);
    for (std::size_t r = 0; r < piv.size(); ++r) is_piv[piv[r]] = static_cast<int>(r);
    MatT<T> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_piv[f] >= 0) continue;
        VecT<T> v(ncols, T(0));
        v[f] = T(1);
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Some x with a x = b, or nullopt.
template <class T>
std::optional<VecT<T>> solve(const MatT<T>& a, const VecT<T>& b, std::size_t ncols) {
    MatT<T> m = a;
    if (m.size() != b.size()) throw std::invalid_argument("solve: dimension mismatch");
    for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(b[i]);
    auto piv = rref(m, ncols);
    for (std::size_t i = piv.size(); i < m.size(); ++i)
        if (!is_zero(m[i][ncols])) return std::nullopt;
    VecT<T> x(ncols, T(0));
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = m[r][ncols];
    return x;
}

template <class T>
std::optional<MatT<T>> inverse(const MatT<T>& a) {
    std::size_t n = a.size();
    MatT<T> m = a;
    for (std::size_t i = 0; i < n; ++i) {
        m[i].resize(2 * n, T(0));
        m[i][n + i] = T(1);
    }
    auto piv = rref(m, n);
    if (piv.size() != n) return std::nullopt;
    MatT<T> inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[i].assign(m[i].begin() + n, m[i].end());
    return inv;
}

template <class T>
MatT<T> transpose(const MatT<T>& a) {
    if (a.empty()) return {};
    MatT<T> t(a[0].size(), VecT<T>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

template <class T>
MatT<T> matmul(const MatT<T>& a, const MatT<T>& b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    auto c = zero_mat<T>(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (is_zero(a[i][l])) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (!is_zero(b[l][j])) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

template <class T>
VecT<T> matvec(const MatT<T>& a, const VecT<T>& v) {
    VecT<T> r(a.size(), T(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!is_zero(a[i][j]) && !is_zero(v[j])) r[i] += a[i][j] * v[j];
    return r;
}

// Vector helpers over Scalar.
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Scalar& s, const Vec& a);
Vec neg(const Vec& a);
Vec conj(const Vec& a);
Vec unit_vec(std::size_t n, std::size_t i);
Vec to_scalar_vec(const QVec& v);
Mat to_scalar_mat(const QMat& m);
bool all_rational(const Vec& v);
QVec to_rational_vec(const Vec& v);

// Coordinates of v in the span of the given vectors (as columns), or nullopt.
std::optional<Vec> coordinates(const std::vector<Vec>& basis, const Vec& v);
// Rank of a list of vectors.
std::size_t span_rank(const std::vector<Vec>& vs);
// A basis (subset, reduced) of the span.
std::vector<Vec> span_basis(const std::vector<Vec>& vs);
bool in_span(const std::vector<Vec>& basis, const Vec& v);

// Signature (n_plus, n_minus, n_zero) of a real symmetric rational matrix.
struct Signature {
    int pos = 0, neg = 0, zero = 0;
    bool operator==(const Signature& o) const { return pos == o.pos && neg == o.neg && zero == o.zero; }
};
Signature signature(const Mat& sym);

}  // namespace lieks
