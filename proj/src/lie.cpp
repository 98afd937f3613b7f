#include "lieks/lie.hpp"

#include <sstream>

namespace lieks {

LieAlgebra::LieAlgebra(std::size_t dim) : dim_(dim), table_(dim * dim) {
    names.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) names[i] = "b" + std::to_string(i + 1);
}

void LieAlgebra::set(std::size_t i, std::size_t j, SparseRow row) {
    SparseRow negrow = row;
    for (auto& [k, c] : negrow) c = -c;
    table_[i * dim_ + j] = std::move(row);
    if (i != j) table_[j * dim_ + i] = std::move(negrow);
}

Vec LieAlgebra::bracket(const Vec& a, const Vec& b) const {
    Vec r(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (b[j].is_zero()) continue;
            const auto& e = table_[i * dim_ + j];
            if (e.empty()) continue;
            Scalar ab = a[i] * b[j];
            for (const auto& [k, c] : e) {
                Scalar t = ab;
                t *= c;
                r[k] += t;
            }
        }
    }
    return r;
}

QVec LieAlgebra::bracket(const QVec& a, const QVec& b) const {
    QVec r(dim_, mpq_class(0));
    for (std::size_t i = 0; i < dim_; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (sgn(b[j]) == 0) continue;
            const auto& e = table_[i * dim_ + j];
            if (e.empty()) continue;
            mpq_class ab = a[i] * b[j];
            for (const auto& [k, c] : e) r[k] += ab * c;
        }
    }
    return r;
}

Mat LieAlgebra::ad(const Vec& x) const {
    Mat m(dim_, Vec(dim_));
    for (std::size_t i = 0; i < dim_; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim_; ++j)
            for (const auto& [k, c] : table_[i * dim_ + j]) {
                Scalar t = x[i];
                t *= c;
                m[k][j] += t;
            }
    }
    return m;
}

QMat LieAlgebra::ad(const QVec& x) const {
    QMat m(dim_, QVec(dim_, mpq_class(0)));
    for (std::size_t i = 0; i < dim_; ++i) {
        if (sgn(x[i]) == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j)
            for (const auto& [k, c] : table_[i * dim_ + j]) m[k][j] += x[i] * c;
    }
    return m;
}

QMat LieAlgebra::killing() const {
    std::vector<QMat> ads;
    ads.reserve(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        QVec e(dim_, mpq_class(0));
        e[i] = 1;
        ads.push_back(ad(e));
    }
    QMat k(dim_, QVec(dim_, mpq_class(0)));
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j) {
            mpq_class t = 0;
            for (std::size_t a = 0; a < dim_; ++a)
                for (std::size_t b = 0; b < dim_; ++b)
                    if (sgn(ads[i][a][b]) != 0 && sgn(ads[j][b][a]) != 0) t += ads[i][a][b] * ads[j][b][a];
            k[i][j] = t;
            k[j][i] = t;
        }
    return k;
}

bool LieAlgebra::antisymmetric() const {
    for (std::size_t i = 0; i < dim_; ++i) {
        if (!table_[i * dim_ + i].empty()) return false;
        for (std::size_t j = i + 1; j < dim_; ++j) {
            QVec a(dim_, mpq_class(0)), b(dim_, mpq_class(0));
            for (const auto& [k, c] : table_[i * dim_ + j]) a[k] += c;
            for (const auto& [k, c] : table_[j * dim_ + i]) b[k] += c;
            for (std::size_t k = 0; k < dim_; ++k)
                if (a[k] != -b[k]) return false;
        }
    }
    return true;
}

bool LieAlgebra::jacobi() const {
    auto br = [&](std::size_t i, const QVec& v) {
        QVec e(dim_, mpq_class(0));
        e[i] = 1;
        return bracket(e, v);
    };
    auto basis_br = [&](std::size_t i, std::size_t j) {
        QVec r(dim_, mpq_class(0));
        for (const auto& [k, c] : table_[i * dim_ + j]) r[k] += c;
        return r;
    };
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j)
            for (std::size_t k = j + 1; k < dim_; ++k) {
                QVec s = br(i, basis_br(j, k));
                QVec t = br(j, basis_br(k, i));
                QVec u = br(k, basis_br(i, j));
                for (std::size_t m = 0; m < dim_; ++m)
                    if (s[m] + t[m] + u[m] != 0) return false;
            }
    return true;
}

namespace {

std::string wrapped(const std::string& n) {
    int depth = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] == '(') ++depth;
        if (n[i] == ')') --depth;
        if (depth == 0 && i > 0 && (n[i] == '+' || n[i] == '-')) return "(" + n + ")";
    }
    return n;
}

}  // namespace

std::string LieAlgebra::table_text() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j) {
            const auto& e = table_[i * dim_ + j];
            if (e.empty()) continue;
            os << "[" << names[i] << "," << names[j] << "] =";
            auto nm = [&](std::uint32_t k) { return wrapped(names[k]); };
            bool first = true;
            for (const auto& [k, c] : e) {
                std::string cs = Scalar(c).str();
                if (first) {
                    os << " " << cs << "*" << nm(k);
                } else if (cs[0] == '-') {
                    os << " - " << cs.substr(1) << "*" << nm(k);
                } else {
                    os << " + " << cs << "*" << nm(k);
                }
                first = false;
            }
            os << "\n";
        }
    return os.str();
}

Vec LinMap::operator()(const Vec& v) const {
    if (cols.empty()) return {};
    Vec r(cols[0].size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j].is_zero()) continue;
        Scalar c = antilinear ? v[j].conj() : v[j];
        const Vec& col = cols[j];
        for (std::size_t i = 0; i < col.size(); ++i)
            if (!col[i].is_zero()) r[i] += c * col[i];
    }
    return r;
}

LinMap identity_map(std::size_t n) {
    LinMap m;
    for (std::size_t i = 0; i < n; ++i) m.cols.push_back(unit_vec(n, i));
    return m;
}

LinMap compose(const LinMap& a, const LinMap& b) {
    LinMap r;
    r.antilinear = a.antilinear != b.antilinear;
    for (const auto& c : b.cols) r.cols.push_back(a(c));
    return r;
}

Mat to_matrix(const LinMap& m, std::size_t dst_dim) {
    Mat a(dst_dim, Vec(m.cols.size()));
    for (std::size_t j = 0; j < m.cols.size(); ++j)
        for (std::size_t i = 0; i < dst_dim; ++i) a[i][j] = m.cols[j][i];
    return a;
}

LinMap inverse_map(const LinMap& m) {
    std::size_t n = m.cols.size();
    auto inv = inverse(to_matrix(m, n));
    if (!inv) throw std::domain_error("inverse_map: map is singular");
    LinMap r;
    r.antilinear = m.antilinear;
    for (std::size_t j = 0; j < n; ++j) {
        Vec c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = (*inv)[i][j];
        // for antilinear m, m^{-1} = conj-linear with columns conj(inv)
        if (m.antilinear) c = conj(c);
        r.cols.push_back(std::move(c));
    }
    return r;
}

bool maps_equal(const LinMap& a, const LinMap& b) {
    return a.antilinear == b.antilinear && a.cols == b.cols;
}

bool is_homomorphism(const LieAlgebra& src, const LieAlgebra& dst, const LinMap& m) {
    std::size_t n = src.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec lhs(dst.dim());
            for (const auto& [k, c] : src.entry(i, j)) lhs = add(lhs, scale(Scalar(c), m.cols[k]));
            Vec rhs = dst.bracket(m.cols[i], m.cols[j]);
            if (lhs != rhs) return false;
        }
    return true;
}

int nilpotency_index(const LieAlgebra& L, const Vec& x) {
    std::size_t n = L.dim();
    // iterate ad(x) on each basis vector
    int worst = 0;
    for (std::size_t j = 0; j < n; ++j) {
        Vec v = unit_vec(n, j);
        int k = 0;
        while (!is_zero_vec(v)) {
            if (k > static_cast<int>(n) + 1) return -1;
            v = L.bracket(x, v);
            ++k;
        }
        worst = std::max(worst, k);
    }
    return worst;
}

bool is_ad_nilpotent(const LieAlgebra& L, const Vec& x) { return nilpotency_index(L, x) >= 0; }

}  // namespace lieks
