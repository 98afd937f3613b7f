#include "lieks/linalg.hpp"

namespace lieks {

Vec add(const Vec& a, const Vec& b) {
    Vec r = a;
    for (std::size_t i = 0; i < b.size(); ++i)
        if (!b[i].is_zero()) r[i] += b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec r = a;
    for (std::size_t i = 0; i < b.size(); ++i)
        if (!b[i].is_zero()) r[i] -= b[i];
    return r;
}

Vec scale(const Scalar& s, const Vec& a) {
    Vec r(a.size());
    if (s.is_zero()) return r;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero()) r[i] = s * a[i];
    return r;
}

Vec neg(const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

Vec conj(const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i].conj();
    return r;
}

Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v(n);
    v[i] = Scalar(1);
    return v;
}

Vec to_scalar_vec(const QVec& v) {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Scalar(v[i]);
    return r;
}

Mat to_scalar_mat(const QMat& m) {
    Mat r;
    r.reserve(m.size());
    for (const auto& row : m) r.push_back(to_scalar_vec(row));
    return r;
}

bool all_rational(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_rational()) return false;
    return true;
}

QVec to_rational_vec(const Vec& v) {
    QVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].rational_value();
    return r;
}

namespace {

bool rational_family(const std::vector<Vec>& vs) {
    for (const auto& v : vs)
        if (!all_rational(v)) return false;
    return true;
}

}  // namespace

std::optional<Vec> coordinates(const std::vector<Vec>& basis, const Vec& v) {
    std::size_t n = v.size(), k = basis.size();
    if (k == 0) {
        if (is_zero_vec(v)) return Vec{};
        return std::nullopt;
    }
    if (rational_family(basis) && all_rational(v)) {
        QMat a(n, QVec(k));
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < n; ++i) a[i][j] = basis[j][i].rational_value();
        auto x = solve(a, to_rational_vec(v), k);
        if (!x) return std::nullopt;
        return to_scalar_vec(*x);
    }
    Mat a(n, Vec(k));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) a[i][j] = basis[j][i];
    return solve(a, v, k);
}

std::size_t span_rank(const std::vector<Vec>& vs) { return span_basis(vs).size(); }

std::vector<Vec> span_basis(const std::vector<Vec>& vs) {
    if (vs.empty()) return {};
    if (rational_family(vs)) {
        QMat m;
        for (const auto& v : vs) m.push_back(to_rational_vec(v));
        auto piv = rref(m);
        std::vector<Vec> out;
        for (std::size_t r = 0; r < piv.size(); ++r) out.push_back(to_scalar_vec(m[r]));
        return out;
    }
    Mat m = vs;
    auto piv = rref(m);
    m.resize(piv.size());
    return m;
}

bool in_span(const std::vector<Vec>& basis, const Vec& v) { return coordinates(basis, v).has_value(); }

Signature signature(const Mat& sym) {
    Mat a = sym;
    std::size_t n = a.size();
    for (const auto& row : a)
        for (const auto& x : row)
            if (!x.is_real()) throw FieldError("signature: non-real entry");
    Signature s;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && !a[i][i].is_zero()) {
                p = i;
                break;
            }
        if (p == n) {
            // all remaining diagonal entries vanish; use an off-diagonal pair
            std::size_t pi = n, pj = n;
            for (std::size_t i = 0; i < n && pi == n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && i != j && !a[i][j].is_zero()) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n) break;
            // row/column pi += row/column pj gives diagonal 2 a_ij
            for (std::size_t k = 0; k < n; ++k) a[pi][k] += a[pj][k];
            for (std::size_t k = 0; k < n; ++k) a[k][pi] += a[k][pj];
            p = pi;
        }
        done[p] = true;
        int sg = a[p][p].sign();
        if (sg > 0)
            ++s.pos;
        else
            ++s.neg;
        Scalar inv = a[p][p].inverse();
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || a[i][p].is_zero()) continue;
            Scalar f = a[i][p] * inv;
            for (std::size_t k = 0; k < n; ++k)
                if (!a[p][k].is_zero()) a[i][k] -= f * a[p][k];
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            a[p][i] = Scalar();
            a[i][p] = Scalar();
        }
    }
    s.zero = static_cast<int>(n) - s.pos - s.neg;
    return s;
}

}  // namespace lieks
