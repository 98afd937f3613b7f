#include "lieks/carrier.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace lieks {

std::string kind_name(TripleKind k) {
    switch (k) {
        case TripleKind::Homogeneous: return "homogeneous";
        case TripleKind::ComplexCayley: return "complex-Cayley";
        case TripleKind::RealCayley: return "real-Cayley";
    }
    return "?";
}

std::string check_triple(const RealForm& F, const Sl2Triple& t) {
    const LieAlgebra& L = F.model->L;
    if (L.bracket(t.h, t.e) != scale(Scalar(2), t.e)) return "[h,e] != 2e";
    if (L.bracket(t.h, t.f) != scale(Scalar(-2), t.f)) return "[h,f] != -2f";
    if (L.bracket(t.e, t.f) != t.h) return "[e,f] != h";
    switch (t.kind) {
        case TripleKind::Homogeneous:
        case TripleKind::ComplexCayley:
            if (F.theta(t.e) != neg(t.e) || F.theta(t.f) != neg(t.f)) return "e or f not in p^c";
            if (F.theta(t.h) != t.h) return "h not in k^c";
            if (t.kind == TripleKind::ComplexCayley && F.sigma(t.e) != t.f) return "sigma(e) != f";
            break;
        case TripleKind::RealCayley:
            if (F.sigma(t.e) != t.e || F.sigma(t.f) != t.f || F.sigma(t.h) != t.h) return "component not sigma-fixed";
            if (F.theta(t.e) != neg(t.f)) return "theta(e) != -f";
            break;
    }
    return "";
}

std::size_t CarrierAlgebra::dim(int k) const {
    auto it = graded.find(k);
    return it == graded.end() ? 0 : it->second.size();
}

std::size_t CarrierAlgebra::dim() const {
    std::size_t d = 0;
    for (const auto& [k, v] : graded) d += v.size();
    return d;
}

std::vector<Vec> CarrierAlgebra::basis() const {
    std::vector<Vec> b;
    for (const auto& [k, v] : graded) b.insert(b.end(), v.begin(), v.end());
    return b;
}

int CarrierAlgebra::max_degree() const {
    int m = 0;
    for (const auto& [k, v] : graded)
        if (!v.empty()) m = std::max(m, std::abs(k));
    return m;
}

std::vector<int> CarrierAlgebra::graded_dims() const {
    std::vector<int> d;
    int m = max_degree();
    for (int k = -m; k <= m; ++k) d.push_back(static_cast<int>(dim(k)));
    return d;
}

GradedBasis graded_basis(const RealForm& F) {
    GradedBasis g;
    g.W = weight_space_decomposition(F);
    const auto& V = g.W.vectors;
    g.partner.assign(V.size(), -1);
    for (std::size_t a = 0; a < V.size(); ++a)
        for (std::size_t b = 0; b < V.size(); ++b) {
            if (V[a].parity != V[b].parity) continue;
            bool opp = true;
            for (std::size_t j = 0; j < V[a].weight.size(); ++j) opp = opp && V[a].weight[j] == -V[b].weight[j];
            if (opp) g.partner[a] = static_cast<int>(b);
        }
    g.k_basis = g.W.frame;
    g.p_basis = g.W.p_zero;
    for (const auto& v : V) (v.parity == 0 ? g.k_basis : g.p_basis).push_back(v.vec);
    return g;
}

namespace {

QVec qzero(std::size_t n) { return QVec(n, mpq_class(0)); }

QVec qaxpy(const QVec& y, const mpq_class& a, const QVec& x) {
    QVec r = y;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (sgn(x[i])) r[i] += a * x[i];
    return r;
}

mpq_class qdot(const QVec& a, const QVec& b) {
    mpq_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) && sgn(b[i])) s += a[i] * b[i];
    return s;
}

QVec to_q(const IntVec& v) {
    QVec r;
    for (int x : v) r.push_back(x);
    return r;
}

template <class T>
std::size_t rank_of(const std::vector<VecT<T>>& vs) {
    if (vs.empty()) return 0;
    return rank(vs);
}

// Membership tests against a fixed span.
template <class T>
class SpanChecker {
public:
    explicit SpanChecker(const std::vector<VecT<T>>& basis) {
        rows_ = basis;
        if (!rows_.empty()) {
            pivots_ = rref(rows_);
            rows_.resize(pivots_.size());
        }
    }
    bool contains(VecT<T> v) const {
        for (std::size_t r = 0; r < pivots_.size(); ++r) {
            std::size_t c = pivots_[r];
            if (is_zero(v[c])) continue;
            T f = v[c];
            for (std::size_t j = 0; j < v.size(); ++j)
                if (!is_zero(rows_[r][j])) v[j] -= f * rows_[r][j];
        }
        return is_zero_vec(v);
    }
    std::size_t dim() const { return pivots_.size(); }

private:
    MatT<T> rows_;
    std::vector<std::size_t> pivots_;
};

struct Ctx {
    const RealForm& F;
    const ChevalleyModel& M;
    GradedBasis gb;
    int nf = 0, nw = 0;
    std::vector<std::size_t> frame_pivot;
    std::vector<QVec> wt;         // weights as rational frame vectors
    std::vector<QVec> cob;        // [y_a, y_partner] in frame coordinates
    std::vector<mpq_class> gh;    // w_a([y_a, y_partner])
    std::vector<QVec> coroot;     // 2 cob / gh
    std::map<std::pair<IntVec, int>, int> lookup;
    struct Br {
        int idx = -1;  // weight vector index, or -1
        mpq_class c;
        bool zero = true;
    };
    std::vector<std::vector<Br>> table;
    std::vector<int> ksimple;
    mutable std::optional<Mat> killing;

    explicit Ctx(const RealForm& f) : F(f), M(*f.model), gb(graded_basis(f)) {
        const auto& V = gb.W.vectors;
        nf = static_cast<int>(gb.W.frame.size());
        nw = static_cast<int>(V.size());
        for (const auto& fr : gb.W.frame) {
            std::size_t p = 0;
            while (sgn(fr[p]) == 0) ++p;
            frame_pivot.push_back(p);
        }
        for (int a = 0; a < nw; ++a) {
            wt.push_back(to_q(V[a].weight));
            lookup[{V[a].weight, V[a].parity}] = a;
        }
        table.assign(nw, std::vector<Br>(nw));
        for (int a = 0; a < nw; ++a)
            for (int b = 0; b < nw; ++b) {
                QVec r = M.L.bracket(V[a].vec, V[b].vec);
                if (is_zero_vec(r)) continue;
                Br& br = table[a][b];
                br.zero = false;
                IntVec w(nf);
                bool zw = true;
                for (int j = 0; j < nf; ++j) {
                    w[j] = V[a].weight[j] + V[b].weight[j];
                    zw = zw && w[j] == 0;
                }
                if (zw) continue;
                auto it = lookup.find({w, V[a].parity ^ V[b].parity});
                if (it == lookup.end()) throw std::logic_error("bracket of weight vectors left the weight decomposition");
                br.idx = it->second;
                const QVec& y = V[br.idx].vec;
                std::size_t p = 0;
                while (sgn(y[p]) == 0) ++p;
                br.c = r[p] / y[p];
                if (r != qaxpy(qzero(r.size()), br.c, y)) throw std::logic_error("weight space not one-dimensional");
            }
        cob.assign(nw, qzero(nf));
        gh.assign(nw, mpq_class(0));
        coroot.assign(nw, qzero(nf));
        for (int a = 0; a < nw; ++a) {
            int p = gb.partner[a];
            if (p < 0) continue;
            cob[a] = frame_coords(M.L.bracket(V[a].vec, V[p].vec));
            gh[a] = qdot(wt[a], cob[a]);
            if (sgn(gh[a])) {
                coroot[a] = cob[a];
                for (auto& x : coroot[a]) x = 2 * x / gh[a];
            }
        }
        // simple roots of k^c: lex-positive parity-0 weights not a sum of two such
        std::vector<int> kpos;
        for (int a = 0; a < nw; ++a) {
            if (V[a].parity != 0) continue;
            for (int j = 0; j < nf; ++j)
                if (V[a].weight[j] != 0) {
                    if (V[a].weight[j] > 0) kpos.push_back(a);
                    break;
                }
        }
        for (int a : kpos) {
            bool decomposable = false;
            for (int b : kpos)
                for (int c : kpos) {
                    bool eq = true;
                    for (int j = 0; j < nf; ++j) eq = eq && V[b].weight[j] + V[c].weight[j] == V[a].weight[j];
                    if (eq) decomposable = true;
                }
            if (!decomposable) ksimple.push_back(a);
        }
    }

    const QVec& vec(int a) const { return gb.W.vectors[a].vec; }
    int parity(int a) const { return gb.W.vectors[a].parity; }

    QVec frame_coords(const QVec& v) const {
        QVec c(nf);
        QVec rebuilt = qzero(v.size());
        for (int j = 0; j < nf; ++j) {
            c[j] = v[frame_pivot[j]] / gb.W.frame[j][frame_pivot[j]];
            rebuilt = qaxpy(rebuilt, c[j], gb.W.frame[j]);
        }
        if (rebuilt != v) throw std::invalid_argument("vector not in h_0^c");
        return c;
    }

    std::optional<Vec> frame_coords(const Vec& v) const {
        Vec c(nf);
        Vec rebuilt(v.size());
        for (int j = 0; j < nf; ++j) {
            c[j] = v[frame_pivot[j]] / Scalar(gb.W.frame[j][frame_pivot[j]]);
            rebuilt = add(rebuilt, scale(c[j], to_scalar_vec(gb.W.frame[j])));
        }
        if (rebuilt != v) return std::nullopt;
        return c;
    }

    QVec from_frame(const QVec& c) const {
        QVec v = qzero(M.dim());
        for (int j = 0; j < nf; ++j) v = qaxpy(v, c[j], gb.W.frame[j]);
        return v;
    }

    QVec dominant(QVec h) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int b : ksimple) {
                mpq_class v = qdot(wt[b], h);
                if (sgn(v) < 0) {
                    h = qaxpy(h, -v, coroot[b]);
                    changed = true;
                }
            }
        }
        return h;
    }

    const Mat& kill() const {
        if (!killing) killing = to_scalar_mat(M.L.killing());
        return *killing;
    }

    // Weight-vector coordinates of a vector in p^c or k^c (nonzero-weight part only).
    std::optional<std::map<int, Scalar>> weight_support(const Vec& e) const {
        std::vector<Vec> cols;
        std::vector<int> which;
        for (int a = 0; a < nw; ++a) {
            cols.push_back(to_scalar_vec(vec(a)));
            which.push_back(a);
        }
        for (const auto& z : gb.W.p_zero) {
            cols.push_back(to_scalar_vec(z));
            which.push_back(-1);
        }
        for (const auto& z : gb.W.frame) {
            cols.push_back(to_scalar_vec(z));
            which.push_back(-2);
        }
        auto c = coordinates(cols, e);
        if (!c) return std::nullopt;
        std::map<int, Scalar> out;
        for (std::size_t i = 0; i < which.size(); ++i) {
            if ((*c)[i].is_zero()) continue;
            if (which[i] < 0) return std::nullopt;
            out[which[i]] = (*c)[i];
        }
        return out;
    }
};

std::string key_string(const QVec& h) {
    std::string s;
    for (const auto& x : h) s += (s.empty() ? "" : ",") + rational_str(x);
    return s;
}

// Centralizer dimension, nilpotency and Killing radical test.
bool maximal_in(const Ctx& C, const std::vector<Vec>& n0, const std::vector<Vec>& t) {
    const LieAlgebra& L = C.M.L;
    std::size_t n = L.dim();
    if (t.empty() && n0.empty()) return true;
    Mat eq;
    for (const auto& tj : t) {
        std::vector<Vec> cols;
        for (const auto& v : n0) cols.push_back(L.bracket(tj, v));
        for (std::size_t r = 0; r < n; ++r) {
            Vec row(n0.size());
            for (std::size_t i = 0; i < n0.size(); ++i) row[i] = cols[i][r];
            eq.push_back(row);
        }
    }
    Mat ns = nullspace(eq, n0.size());
    std::vector<Vec> c;
    for (const auto& a : ns) {
        Vec v(n);
        for (std::size_t i = 0; i < n0.size(); ++i)
            if (!a[i].is_zero()) v = add(v, scale(a[i], n0[i]));
        c.push_back(v);
    }
    // nilpotency of c
    std::vector<Vec> cur = c;
    for (std::size_t step = 0; step <= c.size() + 1 && !cur.empty(); ++step) {
        std::vector<Vec> next;
        for (const auto& x : c)
            for (const auto& y : cur) {
                Vec b = L.bracket(x, y);
                if (!is_zero_vec(b)) next.push_back(b);
            }
        next = span_basis(next);
        if (next.size() == cur.size() && !next.empty()) return false;
        cur = next;
    }
    if (!cur.empty()) return false;
    const Mat& K = C.kill();
    Mat gram(c.size(), Vec(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        Vec kc = matvec(K, c[i]);
        for (std::size_t j = 0; j < c.size(); ++j) {
            Scalar s;
            for (std::size_t r = 0; r < n; ++r)
                if (!kc[r].is_zero() && !c[j][r].is_zero()) s += kc[r] * c[j][r];
            gram[i][j] = s;
        }
    }
    std::size_t rk = c.empty() ? 0 : rank(gram);
    return rk == span_rank(t);
}

// Polynomial helpers for the semisimplicity test.
using SPoly = std::vector<Scalar>;  // ascending coefficients

void trim(SPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

SPoly poly_mod(SPoly a, const SPoly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Scalar f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        trim(a);
    }
    return a;
}

SPoly poly_gcd(SPoly a, SPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        SPoly r = poly_mod(a, b);
        a = b;
        b = r;
    }
    return a;
}

bool ad_semisimple(const LieAlgebra& L, const Vec& x) {
    Mat A = L.ad(x);
    std::size_t n = A.size();
    // minimal polynomial from powers of A
    std::vector<Vec> powers;
    Mat P = identity_mat<Scalar>(n);
    SPoly minpoly;
    for (std::size_t m = 0; m <= n; ++m) {
        Vec flat;
        for (const auto& row : P) flat.insert(flat.end(), row.begin(), row.end());
        auto c = coordinates(powers, flat);
        if (c) {
            minpoly.assign(m + 1, Scalar());
            for (std::size_t i = 0; i < m; ++i) minpoly[i] = -(*c)[i];
            minpoly[m] = Scalar(1);
            break;
        }
        powers.push_back(flat);
        P = matmul(P, A);
    }
    SPoly der;
    for (std::size_t i = 1; i < minpoly.size(); ++i) der.push_back(minpoly[i] * Scalar(static_cast<long>(i)));
    return poly_gcd(minpoly, der).size() <= 1;
}

std::vector<Vec> intersect_h0(const Ctx& C, const std::vector<Vec>& n0) {
    std::vector<Vec> cols = n0;
    for (const auto& f : C.gb.W.frame) cols.push_back(neg(to_scalar_vec(f)));
    std::size_t n = C.M.dim();
    Mat A(n, Vec(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) A[i][j] = cols[j][i];
    Mat ns = nullspace(A, cols.size());
    std::vector<Vec> out;
    for (const auto& a : ns) {
        Vec v(n);
        for (std::size_t i = 0; i < n0.size(); ++i)
            if (!a[i].is_zero()) v = add(v, scale(a[i], n0[i]));
        if (!is_zero_vec(v)) out.push_back(v);
    }
    return span_basis(out);
}

CarrierAlgebra carrier_from(const Ctx& C, const Vec& e, const std::vector<Vec>& t) {
    auto supp = C.weight_support(e);
    if (!supp || supp->empty()) throw std::invalid_argument("carrier_of: e is not a nonzero combination of weight vectors");
    for (const auto& [a, c] : *supp)
        if (C.parity(a) != 1) throw std::invalid_argument("carrier_of: e not in p^c");
    std::vector<Vec> tf;
    for (const auto& tj : t) {
        auto f = C.frame_coords(tj);
        if (!f) throw std::invalid_argument("carrier_of: torus must lie in h_0^c");
        tf.push_back(*f);
    }
    auto wval = [&](int a, const Vec& tc) {
        Scalar s;
        for (int j = 0; j < C.nf; ++j)
            if (sgn(C.wt[a][j])) s += Scalar(C.wt[a][j]) * tc[j];
        return s;
    };
    Vec mu;
    {
        int a0 = supp->begin()->first;
        for (const auto& tc : tf) mu.push_back(wval(a0, tc));
        for (const auto& [a, c] : *supp)
            for (std::size_t j = 0; j < tf.size(); ++j)
                if (wval(a, tf[j]) != mu[j]) throw std::invalid_argument("carrier_of: t does not normalize the line of e");
    }
    std::size_t jmu = 0;
    while (jmu < mu.size() && mu[jmu].is_zero()) ++jmu;
    if (jmu == mu.size()) throw std::invalid_argument("carrier_of: mu vanishes on t");
    // a_k: weight vectors with w(t) = k mu(t), k = parity mod 2
    std::vector<int> roots, deg;
    for (int a = 0; a < C.nw; ++a) {
        Scalar q = wval(a, tf[jmu]) / mu[jmu];
        if (!q.is_rational() || q.rational_value().get_den() != 1) continue;
        long k = q.rational_value().get_num().get_si();
        bool ok = ((k % 2) + 2) % 2 == C.parity(a);
        for (std::size_t j = 0; j < tf.size() && ok; ++j) ok = wval(a, tf[j]) == Scalar(k) * mu[j];
        if (!ok) continue;
        roots.push_back(a);
        deg.push_back(static_cast<int>(k));
    }
    CarrierAlgebra s;
    s.roots = roots;
    s.root_degree = deg;
    std::size_t nr = roots.size();
    std::vector<int> pos_of(C.nw, -1);
    for (std::size_t i = 0; i < nr; ++i) pos_of[roots[i]] = static_cast<int>(i);
    // positivity: degree, then lex on the h_0^c weight
    auto greater_zero = [&](std::size_t i) {
        if (deg[i] != 0) return deg[i] > 0;
        for (int j = 0; j < C.nf; ++j)
            if (sgn(C.wt[roots[i]][j])) return sgn(C.wt[roots[i]][j]) > 0;
        return false;
    };
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < nr; ++i)
        if (greater_zero(i)) pos.push_back(i);
    std::vector<std::size_t> simple;
    for (std::size_t i : pos) {
        bool dec = false;
        for (std::size_t b : pos)
            for (std::size_t c : pos) {
                if (dec) break;
                bool eq = true;
                for (int j = 0; j < C.nf; ++j) eq = eq && C.wt[roots[b]][j] + C.wt[roots[c]][j] == C.wt[roots[i]][j];
                if (eq) dec = true;
            }
        if (!dec) simple.push_back(i);
    }
    std::sort(simple.begin(), simple.end(), [&](std::size_t a, std::size_t b) {
        if (deg[a] != deg[b]) return deg[a] < deg[b];
        return C.wt[roots[a]] > C.wt[roots[b]];
    });
    std::size_t r = simple.size();
    for (std::size_t i : simple) {
        s.simple.push_back(static_cast<int>(i));
        int p = C.gb.partner[roots[i]];
        if (p < 0 || pos_of[p] < 0) throw std::logic_error("carrier_of: simple root without partner");
        s.negative_simple.push_back(pos_of[p]);
        s.degrees.push_back(deg[i]);
    }
    s.cartan_matrix.assign(r, IntVec(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            mpq_class v = qdot(C.wt[roots[simple[i]]], C.coroot[roots[simple[j]]]);
            if (v.get_den() != 1) throw std::logic_error("carrier_of: non-integral Cartan entry");
            s.cartan_matrix[i][j] = static_cast<int>(v.get_num().get_si());
        }
    s.type = classify_cartan(s.cartan_matrix);
    s.principal = r > 0 && std::all_of(s.degrees.begin(), s.degrees.end(), [](int d) { return d == 1; });
    for (std::size_t i = 0; i < r; ++i) {
        int a = roots[simple[i]];
        int p = C.gb.partner[a];
        Vec k = to_scalar_vec(C.from_frame(C.coroot[a]));
        s.cartan.push_back(k);
        s.generators.c.push_back(k);
        s.generators.a.push_back(to_scalar_vec(C.vec(a)));
        s.generators.b.push_back(scale(Scalar(mpq_class(2 / C.gh[a])), to_scalar_vec(C.vec(p))));
    }
    for (std::size_t i = 0; i < nr; ++i) s.graded[deg[i]].push_back(to_scalar_vec(C.vec(roots[i])));
    s.graded[0].insert(s.graded[0].end(), s.cartan.begin(), s.cartan.end());
    // defining element: C t = eps
    QMat Cq(r, QVec(r));
    QVec eps(r);
    for (std::size_t i = 0; i < r; ++i) {
        eps[i] = s.degrees[i];
        for (std::size_t j = 0; j < r; ++j) Cq[i][j] = s.cartan_matrix[i][j];
    }
    auto tsol = solve(Cq, eps, r);
    if (!tsol) throw std::logic_error("carrier_of: singular Cartan matrix");
    QVec hf = qzero(C.nf);
    for (std::size_t j = 0; j < r; ++j) hf = qaxpy(hf, (*tsol)[j], C.coroot[roots[simple[j]]]);
    s.defining = to_scalar_vec(C.from_frame(hf));
    return s;
}

}  // namespace

std::vector<Vec> normalizer_n0(const RealForm& F, const Vec& e) {
    if (is_zero_vec(e)) throw std::invalid_argument("normalizer_n0: e = 0");
    if (F.theta(e) != neg(e)) throw std::invalid_argument("normalizer_n0: e not in p^c");
    GradedBasis gb = graded_basis(F);
    const LieAlgebra& L = F.model->L;
    std::size_t n = L.dim(), m = gb.k_basis.size();
    std::vector<Vec> kb;
    for (const auto& k : gb.k_basis) kb.push_back(to_scalar_vec(k));
    Mat A(n, Vec(m + 1));
    for (std::size_t j = 0; j < m; ++j) {
        Vec b = L.bracket(kb[j], e);
        for (std::size_t i = 0; i < n; ++i) A[i][j] = b[i];
    }
    for (std::size_t i = 0; i < n; ++i) A[i][m] = -e[i];
    Mat ns = nullspace(A, m + 1);
    std::vector<Vec> out;
    for (const auto& a : ns) {
        Vec v(n);
        for (std::size_t j = 0; j < m; ++j)
            if (!a[j].is_zero()) v = add(v, scale(a[j], kb[j]));
        if (!is_zero_vec(v)) out.push_back(v);
    }
    return span_basis(out);
}

bool is_maximal_torus(const RealForm& F, const std::vector<Vec>& n0, const std::vector<Vec>& t) {
    Ctx C(F);
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t j = i + 1; j < t.size(); ++j)
            if (!is_zero_vec(C.M.L.bracket(t[i], t[j]))) return false;
        if (!C.frame_coords(t[i]) && !ad_semisimple(C.M.L, t[i])) return false;
    }
    return maximal_in(C, n0, t);
}

std::vector<Vec> maximal_torus(const RealForm& F, const std::vector<Vec>& n0) {
    if (n0.empty()) return {};
    Ctx C(F);
    std::vector<Vec> t = intersect_h0(C, n0);
    if (maximal_in(C, n0, t)) return t;
    const LieAlgebra& L = C.M.L;
    for (std::size_t round = 0; round < n0.size(); ++round) {
        bool grown = false;
        for (const auto& x : n0) {
            bool commutes = true;
            for (const auto& tj : t) commutes = commutes && is_zero_vec(L.bracket(x, tj));
            if (!commutes || in_span(t, x) || !ad_semisimple(L, x)) continue;
            t.push_back(x);
            grown = true;
            break;
        }
        if (maximal_in(C, n0, t)) return t;
        if (!grown) break;
    }
    throw std::runtime_error("maximal_torus: greedy extension did not reach a maximal torus");
}

CarrierAlgebra carrier_of(const RealForm& F, const Vec& e, const std::vector<Vec>& t) {
    Ctx C(F);
    return carrier_from(C, e, t);
}

bool is_principal(const CarrierAlgebra& s) {
    bool p = !s.degrees.empty() && std::all_of(s.degrees.begin(), s.degrees.end(), [](int d) { return d == 1; });
    if (p && s.dim(0) != s.cartan.size()) throw std::logic_error("principal carrier with non-toral s_0");
    return p;
}

bool general_position(const RealForm& F, const CarrierAlgebra& s, const Vec& e) {
    auto it = s.graded.find(1);
    if (it == s.graded.end() || !in_span(it->second, e)) return false;
    std::vector<Vec> img;
    auto z = s.graded.find(0);
    if (z != s.graded.end())
        for (const auto& x : z->second) img.push_back(F.model->L.bracket(x, e));
    return span_rank(img) == it->second.size();
}

std::optional<Vec> complete_triple(const RealForm& F, const Vec& h, const Vec& e) {
    GradedBasis gb = graded_basis(F);
    const LieAlgebra& L = F.model->L;
    std::size_t n = L.dim(), m = gb.p_basis.size();
    std::vector<Vec> pb;
    for (const auto& p : gb.p_basis) pb.push_back(to_scalar_vec(p));
    Mat A(2 * n, Vec(m));
    Vec rhs(2 * n);
    for (std::size_t j = 0; j < m; ++j) {
        Vec a = L.bracket(e, pb[j]);
        Vec b = add(L.bracket(h, pb[j]), scale(Scalar(2), pb[j]));
        for (std::size_t i = 0; i < n; ++i) {
            A[i][j] = a[i];
            A[n + i][j] = b[i];
        }
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i] = h[i];
    auto c = solve(A, rhs, m);
    if (!c) return std::nullopt;
    Vec f(n);
    for (std::size_t j = 0; j < m; ++j)
        if (!(*c)[j].is_zero()) f = add(f, scale((*c)[j], pb[j]));
    return f;
}

std::string check_carrier(const RealForm& F, const CarrierAlgebra& s) {
    const LieAlgebra& L = F.model->L;
    if (s.dim(0) != s.dim(1)) return "dim s0 != dim s1";
    for (int d : s.degrees)
        if (d != 0 && d != 1) return "simple-root degree outside {0,1}";
    for (const auto& [k, vs] : s.graded)
        for (const auto& v : vs) {
            Vec t = F.theta(v);
            if (k % 2 == 0 ? t != v : t != neg(v)) return "s_k parity mismatch at degree " + std::to_string(k);
            if (L.bracket(s.defining, v) != scale(Scalar(k), v)) return "defining element eigenvalue wrong on s_" + std::to_string(k);
        }
    bool rational = true;
    for (const auto& [k, vs] : s.graded)
        for (const auto& v : vs) rational = rational && all_rational(v);
    std::map<int, SpanChecker<mpq_class>> spans;
    std::vector<QVec> all;
    if (!rational) return "non-rational carrier basis";
    for (const auto& [k, vs] : s.graded) {
        std::vector<QVec> q;
        for (const auto& v : vs) q.push_back(to_rational_vec(v));
        spans.emplace(k, SpanChecker<mpq_class>(q));
        all.insert(all.end(), q.begin(), q.end());
    }
    std::vector<QVec> derived;
    for (const auto& [j, vj] : s.graded)
        for (const auto& [k, vk] : s.graded)
            for (const auto& a : vj)
                for (const auto& b : vk) {
                    QVec c = L.bracket(to_rational_vec(a), to_rational_vec(b));
                    if (is_zero_vec(c)) continue;
                    auto it = spans.find(j + k);
                    if (it == spans.end() || !it->second.contains(c)) return "[s_j,s_k] not in s_{j+k}";
                    derived.push_back(c);
                }
    if (rank_of(derived) != all.size()) return "s is not its own derived algebra";
    return "";
}

QVec dominant_characteristic(const RealForm& F, const Vec& h) {
    Ctx C(F);
    auto f = C.frame_coords(h);
    if (!f || !all_rational(*f)) throw std::invalid_argument("dominant_characteristic: h not a rational element of h_0^c");
    return C.dominant(to_rational_vec(*f));
}

OrbitCatalog enumerate_orbits(const RealForm& F) {
    OrbitCatalog cat;
    if (F.compact()) return cat;
    Ctx C(F);
    const LieAlgebra& L = C.M.L;
    int nf = C.nf, nw = C.nw;
    std::map<std::string, CatalogEntry> found;
    std::set<std::string> failed_keys;

    auto cart = [&](int a, int b) { return qdot(C.wt[a], C.coroot[b]); };
    auto usable = [&](int a) { return C.gb.partner[a] >= 0 && sgn(C.gh[a]) != 0; };

    std::mt19937 rng(20240607);

    auto process = [&](const std::vector<int>& cur) {
        std::size_t r = cur.size();
        ++cat.candidates_examined;
        QMat Cq(r, QVec(r));
        QVec d(r);
        for (std::size_t i = 0; i < r; ++i) {
            d[i] = C.parity(cur[i]);
            for (std::size_t j = 0; j < r; ++j) Cq[i][j] = cart(cur[i], cur[j]);
        }
        auto t = solve(Cq, d, r);
        if (!t) return;
        QVec h = qzero(nf);
        for (std::size_t j = 0; j < r; ++j) h = qaxpy(h, 2 * (*t)[j], C.coroot[cur[j]]);
        std::string key = key_string(C.dominant(h));
        if (found.count(key)) return;
        // closure of the generated subalgebra over weight-vector labels
        std::vector<char> in(nw, 0);
        std::vector<int> S;
        for (int a : cur)
            for (int b : {a, C.gb.partner[a]})
                if (!in[b]) {
                    in[b] = 1;
                    S.push_back(b);
                }
        for (std::size_t i = 0; i < S.size(); ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                for (auto [x, y] : {std::pair{S[i], S[j]}, std::pair{S[j], S[i]}}) {
                    const auto& br = C.table[x][y];
                    if (!br.zero && br.idx >= 0 && !in[br.idx]) {
                        in[br.idx] = 1;
                        S.push_back(br.idx);
                    }
                }
            }
        std::vector<int> deg0, deg1, degm1;
        for (int a : S) {
            mpq_class v = qdot(C.wt[a], h) / 2;
            if (v.get_den() != 1) return;
            long k = v.get_num().get_si();
            if (((k % 2) + 2) % 2 != C.parity(a)) return;
            if (k == 0) deg0.push_back(a);
            if (k == 1) deg1.push_back(a);
            if (k == -1) degm1.push_back(a);
        }
        if (deg0.size() + r != deg1.size()) return;
        std::vector<QVec> s0;
        for (int a : deg0) s0.push_back(C.vec(a));
        for (int a : cur) s0.push_back(C.from_frame(C.coroot[a]));
        auto gp = [&](const QVec& e) {
            std::vector<QVec> img;
            for (const auto& x : s0) img.push_back(L.bracket(x, e));
            return rank_of(img) == deg1.size();
        };
        QVec e = qzero(C.M.dim());
        for (int a : cur)
            if (C.parity(a) == 1) e = qaxpy(e, 1, C.vec(a));
        bool ok = gp(e);
        std::uniform_int_distribution<int> coef(1, 7);
        for (int tries = 0; !ok && tries < 24; ++tries) {
            e = qzero(C.M.dim());
            for (int a : deg1) e = qaxpy(e, coef(rng), C.vec(a));
            ok = gp(e);
        }
        if (!ok) return;
        QVec hm = C.from_frame(h);
        QMat A(C.M.dim(), QVec(degm1.size()));
        for (std::size_t j = 0; j < degm1.size(); ++j) {
            QVec b = L.bracket(e, C.vec(degm1[j]));
            for (int i = 0; i < C.M.dim(); ++i) A[i][j] = b[i];
        }
        auto fc = solve(A, hm, degm1.size());
        if (!fc) return;
        QVec f = qzero(C.M.dim());
        for (std::size_t j = 0; j < degm1.size(); ++j) f = qaxpy(f, (*fc)[j], C.vec(degm1[j]));
        Vec ev = to_scalar_vec(e);
        std::vector<Vec> n0 = normalizer_n0(F, ev);
        std::vector<Vec> t0 = intersect_h0(C, n0);
        if (!maximal_in(C, n0, t0)) {
            failed_keys.insert(key);
            return;
        }
        CarrierAlgebra s = carrier_from(C, ev, t0);
        if (!check_carrier(F, s).empty()) {
            failed_keys.insert(key);
            return;
        }
        if (s.defining != to_scalar_vec(qaxpy(qzero(hm.size()), mpq_class(1, 2), hm))) {
            failed_keys.insert(key);
            return;
        }
        CatalogEntry entry{s, Sl2Triple{to_scalar_vec(f), to_scalar_vec(hm), ev, TripleKind::Homogeneous}, key};
        found.emplace(key, std::move(entry));
        failed_keys.erase(key);
    };

    std::vector<int> cur;
    std::function<void(int)> dfs = [&](int start) {
        bool has_odd = false;
        for (int a : cur) has_odd = has_odd || C.parity(a) == 1;
        if (has_odd) process(cur);
        if (static_cast<int>(cur.size()) == nf) return;
        for (int b = start; b < nw; ++b) {
            if (!usable(b)) continue;
            bool ok = true;
            for (int a : cur) {
                if (!C.table[a][C.gb.partner[b]].zero || !C.table[b][C.gb.partner[a]].zero) {
                    ok = false;
                    break;
                }
                mpq_class ab = cart(a, b), ba = cart(b, a);
                if (ab.get_den() != 1 || ba.get_den() != 1 || sgn(ab) > 0 || sgn(ba) > 0 || (sgn(ab) == 0) != (sgn(ba) == 0)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            std::vector<QVec> ws;
            for (int a : cur) ws.push_back(C.wt[a]);
            ws.push_back(C.wt[b]);
            if (rank_of(ws) != ws.size()) continue;
            cur.push_back(b);
            IntMat cm(cur.size(), IntVec(cur.size()));
            for (std::size_t i = 0; i < cur.size(); ++i)
                for (std::size_t j = 0; j < cur.size(); ++j) cm[i][j] = static_cast<int>(cart(cur[i], cur[j]).get_num().get_si());
            bool finite = true;
            try {
                classify_cartan(cm);
            } catch (const std::invalid_argument&) {
                finite = false;
            }
            if (finite) dfs(b + 1);
            cur.pop_back();
        }
    };
    dfs(0);
    for (auto& [k, e] : found) cat.entries.push_back(std::move(e));
    std::sort(cat.entries.begin(), cat.entries.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
        if (a.carrier.dim() != b.carrier.dim()) return a.carrier.dim() > b.carrier.dim();
        return a.key < b.key;
    });
    if (!failed_keys.empty())
        throw std::runtime_error("enumerate_orbits: no carrier with a maximal torus in h_0^c for characteristic " + *failed_keys.begin());
    return cat;
}

}  // namespace lieks
