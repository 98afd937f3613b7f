#include "lieks/rootsystem.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace lieks {

namespace {

IntMat form_of(char letter, int n) {
    IntMat B(n, IntVec(n, 0));
    switch (letter) {
        case 'A':
            for (int i = 0; i < n; ++i) B[i][i] = 2;
            for (int i = 0; i + 1 < n; ++i) B[i][i + 1] = B[i + 1][i] = -1;
            break;
        case 'B':
            for (int i = 0; i < n; ++i) B[i][i] = (i + 1 < n) ? 4 : 2;
            for (int i = 0; i + 1 < n; ++i) B[i][i + 1] = B[i + 1][i] = -2;
            break;
        case 'C':
            for (int i = 0; i < n; ++i) B[i][i] = (i + 1 < n) ? 2 : 4;
            for (int i = 0; i + 1 < n; ++i) B[i][i + 1] = B[i + 1][i] = (i + 2 == n) ? -2 : -1;
            break;
        case 'D':
            for (int i = 0; i < n; ++i) B[i][i] = 2;
            for (int i = 0; i + 2 < n - 1; ++i) B[i][i + 1] = B[i + 1][i] = -1;
            B[n - 3][n - 2] = B[n - 2][n - 3] = -1;
            B[n - 3][n - 1] = B[n - 1][n - 3] = -1;
            break;
        case 'G':
            B = {{2, -3}, {-3, 6}};
            break;
        default:
            throw std::invalid_argument("unsupported type");
    }
    return B;
}

IntMat cartan_from_form(const IntMat& B) {
    int n = static_cast<int>(B.size());
    IntMat C(n, IntVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) C[i][j] = 2 * B[i][j] / B[j][j];
    return C;
}

std::vector<std::vector<int>> components(const IntMat& c) {
    int n = static_cast<int>(c.size());
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> cur{s};
        comp[s] = static_cast<int>(out.size());
        for (std::size_t q = 0; q < cur.size(); ++q)
            for (int j = 0; j < n; ++j)
                if (comp[j] < 0 && c[cur[q]][j] != 0) {
                    comp[j] = comp[s];
                    cur.push_back(j);
                }
        std::sort(cur.begin(), cur.end());
        out.push_back(cur);
    }
    return out;
}

bool positive_definite(const IntMat& B) {
    int n = static_cast<int>(B.size());
    for (int k = 1; k <= n; ++k) {
        QMat m(k, QVec(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) m[i][j] = B[i][j];
        mpq_class det = 1;
        for (int c = 0; c < k; ++c) {
            int p = -1;
            for (int r = c; r < k; ++r)
                if (sgn(m[r][c]) != 0) {
                    p = r;
                    break;
                }
            if (p < 0) return false;
            if (p != c) {
                std::swap(m[p], m[c]);
                det = -det;
            }
            det *= m[c][c];
            for (int r = c + 1; r < k; ++r) {
                mpq_class f = m[r][c] / m[c][c];
                for (int j = c; j < k; ++j) m[r][j] -= f * m[c][j];
            }
        }
        if (sgn(det) <= 0) return false;
    }
    return true;
}

std::string name_component(const IntMat& c, const std::vector<int>& idx, const IntMat& B) {
    int n = static_cast<int>(idx.size());
    std::string r = std::to_string(n);
    if (n == 1) return "A1";
    int maxprod = 0, maxdeg = 0;
    for (int a : idx) {
        int deg = 0;
        for (int b : idx)
            if (a != b && c[a][b] != 0) {
                ++deg;
                maxprod = std::max(maxprod, c[a][b] * c[b][a]);
            }
        maxdeg = std::max(maxdeg, deg);
    }
    if (maxprod == 3) return "G2";
    if (maxprod == 2) {
        int maxnorm = 0;
        for (int a : idx) maxnorm = std::max(maxnorm, B[a][a]);
        int nlong = 0;
        for (int a : idx) nlong += (B[a][a] == maxnorm);
        if (n == 4 && nlong == 2) {
            // F4 has the double bond in the middle; B4/C4 at the end
            bool end_double = false;
            for (int a : idx) {
                int deg = 0;
                bool dbl = false;
                for (int b : idx)
                    if (a != b && c[a][b] != 0) {
                        ++deg;
                        if (c[a][b] * c[b][a] == 2) dbl = true;
                    }
                if (deg == 1 && dbl) end_double = true;
            }
            if (!end_double) return "F4";
        }
        if (n == 2) return B[idx[0]][idx[0]] == maxnorm ? "B2" : "C2";
        return (nlong > 1 ? "B" : "C") + r;
    }
    if (maxdeg >= 3) return n == 6 || n == 7 || n == 8 ? "E?" + r : "D" + r;
    return "A" + r;
}

}  // namespace

bool supported_type(char letter, int rank) {
    switch (letter) {
        case 'A':
            return rank >= 1 && rank <= 4;
        case 'B':
        case 'C':
            return rank == 2 || rank == 3;
        case 'D':
            return rank == 4;
        case 'G':
            return rank == 2;
        default:
            return false;
    }
}

CartanMatrix cartan_matrix(char letter, int rank) {
    if (!supported_type(letter, rank))
        throw std::invalid_argument(std::string("unsupported type ") + letter + std::to_string(rank));
    CartanMatrix c;
    c.entries = cartan_from_form(form_of(letter, rank));
    c.type = std::string(1, letter) + std::to_string(rank);
    return c;
}

IntMat symmetrized_form(const IntMat& c) {
    int n = static_cast<int>(c.size());
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(c[i].size()) != n) throw std::invalid_argument("Cartan matrix not square");
        if (c[i][i] != 2) throw std::invalid_argument("Cartan matrix diagonal must be 2");
        for (int j = 0; j < n; ++j)
            if (i != j && (c[i][j] > 0 || (c[i][j] == 0) != (c[j][i] == 0)))
                throw std::invalid_argument("invalid Cartan matrix off-diagonal pattern");
    }
    std::vector<mpq_class> norm(n, mpq_class(0));
    for (const auto& comp : components(c)) {
        norm[comp[0]] = 2;
        std::vector<int> stack{comp[0]};
        std::vector<bool> seen(n, false);
        seen[comp[0]] = true;
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j : comp)
                if (j != i && c[i][j] != 0) {
                    // C_ij B_jj = C_ji B_ii
                    mpq_class nj = mpq_class(c[j][i]) * norm[i] / c[i][j];
                    if (seen[j]) {
                        if (nj != norm[j]) throw std::invalid_argument("Cartan matrix not symmetrizable");
                        continue;
                    }
                    seen[j] = true;
                    norm[j] = nj;
                    stack.push_back(j);
                }
        }
        mpq_class mn = norm[comp[0]];
        for (int j : comp) mn = std::min(mn, norm[j]);
        // scale so the shortest root has norm 2 and all entries are integers
        mpz_class l = 1;
        for (int j : comp) {
            mpq_class v = norm[j] * 2 / mn;
            mpz_class d = v.get_den();
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        }
        for (int j : comp) norm[j] = norm[j] * 2 / mn * l;
    }
    IntMat B(n, IntVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            mpq_class v = mpq_class(c[i][j]) * norm[j] / 2;
            if (v.get_den() != 1) throw std::invalid_argument("Cartan matrix not symmetrizable over Z");
            B[i][j] = static_cast<int>(v.get_num().get_si());
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (B[i][j] != B[j][i]) throw std::invalid_argument("Cartan matrix not symmetrizable");
    return B;
}

std::string classify_cartan(const IntMat& c) {
    IntMat B = symmetrized_form(c);
    if (!positive_definite(B)) throw std::invalid_argument("Cartan matrix not of finite type");
    std::vector<std::string> names;
    for (const auto& comp : components(c)) names.push_back(name_component(c, comp, B));
    std::sort(names.begin(), names.end());
    std::string out;
    for (const auto& s : names) out += (out.empty() ? "" : "+") + s;
    return out;
}

int RootSystem::find(const IntVec& v) const {
    auto it = index_.find(v);
    return it == index_.end() ? -1 : it->second;
}

int RootSystem::height(int r) const { return std::accumulate(roots[r].begin(), roots[r].end(), 0); }

int RootSystem::inner(const IntVec& a, const IntVec& b) const {
    int s = 0, n = rank();
    for (int i = 0; i < n; ++i)
        if (a[i] != 0)
            for (int j = 0; j < n; ++j) s += a[i] * form[i][j] * b[j];
    return s;
}

int RootSystem::pairing_vec(const IntVec& beta, const IntVec& alpha) const {
    return 2 * inner(beta, alpha) / inner(alpha, alpha);
}

int RootSystem::pairing(int beta, int alpha) const { return pairing_vec(roots[beta], roots[alpha]); }

int RootSystem::sum(int a, int b) const {
    IntVec v(rank());
    for (int i = 0; i < rank(); ++i) v[i] = roots[a][i] + roots[b][i];
    return find(v);
}

RootSystem build_root_system(const CartanMatrix& c) {
    RootSystem R;
    R.cartan = c;
    R.cartan.type = classify_cartan(c.entries);
    R.form = symmetrized_form(c.entries);
    int n = c.rank();
    std::set<IntVec> seen;
    std::deque<IntVec> queue;
    for (int i = 0; i < n; ++i) {
        IntVec e(n, 0);
        e[i] = 1;
        seen.insert(e);
        queue.push_back(e);
    }
    while (!queue.empty()) {
        IntVec b = queue.front();
        queue.pop_front();
        for (int i = 0; i < n; ++i) {
            int p = 0;
            for (int k = 0; k < n; ++k) p += b[k] * c.entries[k][i];
            IntVec r = b;
            r[i] -= p;
            if (seen.insert(r).second) queue.push_back(r);
        }
    }
    std::vector<IntVec> pos;
    for (const auto& r : seen)
        if (std::all_of(r.begin(), r.end(), [](int x) { return x >= 0; })) pos.push_back(r);
    std::sort(pos.begin(), pos.end(), [](const IntVec& a, const IntVec& b) {
        int ha = std::accumulate(a.begin(), a.end(), 0), hb = std::accumulate(b.begin(), b.end(), 0);
        if (ha != hb) return ha < hb;
        return a > b;
    });
    if (2 * pos.size() != seen.size()) throw std::logic_error("root closure: positive/negative mismatch");
    R.npos = static_cast<int>(pos.size());
    R.roots = pos;
    for (const auto& r : pos) {
        IntVec m = r;
        for (auto& x : m) x = -x;
        R.roots.push_back(m);
    }
    for (int i = 0; i < R.size(); ++i) R.index_[R.roots[i]] = i;
    R.simple_index_.resize(n);
    for (int i = 0; i < n; ++i) {
        IntVec e(n, 0);
        e[i] = 1;
        R.simple_index_[i] = R.find(e);
    }
    return R;
}

int ChevalleyModel::root_of(int b) const {
    int N = R.npos, l = R.rank();
    if (b < N) return b;
    if (b < N + l) return -1;
    return b - l;
}

int ChevalleyModel::N(int a, int b) const { return Ntab_[a * R.size() + b]; }

Vec ChevalleyModel::coroot(int r) const {
    Vec v(L.dim());
    int nr = R.norm(r);
    for (int i = 0; i < rank(); ++i)
        if (R.roots[r][i] != 0) v[h_index(i)] = Scalar(frac(R.roots[r][i] * R.form[i][i], nr));
    return v;
}

std::vector<Vec> ChevalleyModel::gens_h() const {
    std::vector<Vec> v;
    for (int i = 0; i < rank(); ++i) v.push_back(h(i));
    return v;
}
std::vector<Vec> ChevalleyModel::gens_x() const {
    std::vector<Vec> v;
    for (int i = 0; i < rank(); ++i) v.push_back(x(R.simple(i)));
    return v;
}
std::vector<Vec> ChevalleyModel::gens_y() const {
    std::vector<Vec> v;
    for (int i = 0; i < rank(); ++i) v.push_back(x(R.neg(R.simple(i))));
    return v;
}

namespace {

struct CarterSolver {
    const RootSystem& R;
    std::vector<int> tab;        // 0 = unknown or not a root sum
    std::vector<char> known;
    std::vector<int> es_first;   // for positive nonsimple xi: simple index i of the extraspecial pair
    int n;

    explicit CarterSolver(const RootSystem& R_) : R(R_), n(R_.size()) {
        tab.assign(n * n, 0);
        known.assign(n * n, 0);
        es_first.assign(n, -1);
        for (int r = 0; r < R.npos; ++r) {
            if (R.height(r) == 1) continue;
            for (int i = 0; i < R.rank(); ++i) {
                IntVec d = R.roots[r];
                d[i] -= 1;
                int s = R.find(d);
                if (s >= 0 && R.positive(s)) {
                    es_first[r] = i;
                    break;
                }
            }
        }
    }

    // largest p with b - p a a root
    int string_down(int a, int b) const {
        int p = 0;
        IntVec v = R.roots[b];
        while (true) {
            for (int k = 0; k < R.rank(); ++k) v[k] -= R.roots[a][k];
            if (R.find(v) < 0) break;
            ++p;
        }
        return p;
    }

    int norm_vec(const IntVec& v) const { return R.inner(v, v); }

    int get(int a, int b) {
        int c = R.sum(a, b);
        if (c < 0) return 0;
        int key = a * n + b;
        if (known[key]) return tab[key];
        int v = compute(a, b, c);
        known[key] = 1;
        tab[key] = v;
        return v;
    }

    int compute(int a, int b, int c) {
        bool pa = R.positive(a), pb = R.positive(b);
        if (!pa && !pb) return -get(R.neg(a), R.neg(b));
        if (pa && !pb) {
            if (R.positive(c)) {
                mpq_class v = frac(-R.norm(c), R.norm(a)) * get(R.neg(b), c);
                return as_int(v);
            }
            mpq_class v = frac(R.norm(c), R.norm(b)) * get(R.neg(c), a);
            return as_int(v);
        }
        if (!pa && pb) return -get(b, a);
        // both positive: xi = a + b
        int xi = c;
        int i = es_first[xi];
        int g = R.simple(i);
        int d = R.find(sub(R.roots[xi], R.roots[g]));
        if (a == g && b == d) return string_down(a, b) + 1;
        if (a == d && b == g) return -(string_down(b, a) + 1);
        int Ngd = get(g, d);
        // four-term identity with (a, b, -g, -d)
        mpq_class s = 0;
        IntVec bg = sub(R.roots[b], R.roots[g]);
        if (R.find(bg) >= 0)
            s += frac(get(b, R.neg(g)) * get(a, R.neg(d)), norm_vec(bg));
        IntVec ag = sub(R.roots[a], R.roots[g]);
        if (R.find(ag) >= 0)
            s += frac(get(R.neg(g), a) * get(b, R.neg(d)), norm_vec(ag));
        // N_{-g,-d} = -N_{g,d}
        mpq_class v = mpq_class(-R.norm(xi)) / mpq_class(-Ngd) * s;
        return as_int(v);
    }

    static IntVec sub(const IntVec& x, const IntVec& y) {
        IntVec r = x;
        for (std::size_t k = 0; k < r.size(); ++k) r[k] -= y[k];
        return r;
    }

    static int as_int(const mpq_class& v) {
        if (v.get_den() != 1) throw std::logic_error("structure constant not integral");
        return static_cast<int>(v.get_num().get_si());
    }
};

}  // namespace

void ChevalleyModel::fill_table() {
    int np = R.npos, l = R.rank(), n = R.size();
    L = LieAlgebra(static_cast<std::size_t>(2 * np + l));
    auto root_name = [&](int r) {
        std::string s = R.positive(r) ? "x" : "y";
        for (int v : R.roots[r]) s += std::to_string(std::abs(v));
        return s;
    };
    for (int r = 0; r < n; ++r) L.names[x_index(r)] = root_name(r);
    for (int i = 0; i < l; ++i) L.names[h_index(i)] = "h" + std::to_string(i + 1);
    // [h_j, x_r] = r(h_j) x_r
    for (int j = 0; j < l; ++j)
        for (int r = 0; r < n; ++r) {
            int v = 0;
            for (int k = 0; k < l; ++k) v += R.roots[r][k] * R.cartan.entries[k][j];
            if (v != 0) L.set(h_index(j), x_index(r), {{static_cast<std::uint32_t>(x_index(r)), mpq_class(v)}});
        }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (b == R.neg(a)) {
                SparseRow row;
                Vec hc = coroot(a);
                for (int i = 0; i < l; ++i)
                    if (!hc[h_index(i)].is_zero())
                        row.push_back({static_cast<std::uint32_t>(h_index(i)), hc[h_index(i)].rational_value()});
                L.set(x_index(a), x_index(b), row);
                continue;
            }
            int c = R.sum(a, b);
            if (c < 0) continue;
            L.set(x_index(a), x_index(b), {{static_cast<std::uint32_t>(x_index(c)), mpq_class(N(a, b))}});
        }
}

ChevalleyModel build_chevalley_model(const RootSystem& R) {
    ChevalleyModel M;
    M.R = R;
    CarterSolver cs(R);
    int n = R.size();
    M.Ntab_.assign(n * n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) M.Ntab_[a * n + b] = cs.get(a, b);
    M.build_first_ = cs.es_first;
    M.fill_table();
    return M;
}

ChevalleyModel resign_model(const ChevalleyModel& M, const std::vector<int>& s) {
    ChevalleyModel out = M;
    int n = M.R.size();
    for (int r = 0; r < n; ++r)
        if (s[r] != s[M.R.neg(r)] || (s[r] != 1 && s[r] != -1))
            throw std::invalid_argument("resign_model: need s_r = s_{-r} = +-1");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int c = M.R.sum(a, b);
            if (c >= 0) out.Ntab_[a * n + b] = s[a] * s[b] * s[c] * M.Ntab_[a * n + b];
        }
    out.fill_table();
    return out;
}

std::shared_ptr<const ChevalleyModel> make_model(char letter, int rank) {
    auto R = build_root_system(cartan_matrix(letter, rank));
    return std::make_shared<const ChevalleyModel>(build_chevalley_model(R));
}

LinMap extend_generators(const ChevalleyModel& M, const LieAlgebra& target, const std::vector<Vec>& hs,
                         const std::vector<Vec>& xs, const std::vector<Vec>& ys) {
    const RootSystem& R = M.R;
    int l = R.rank();
    LinMap m;
    m.cols.assign(M.L.dim(), Vec(target.dim()));
    for (int i = 0; i < l; ++i) {
        m.cols[M.h_index(i)] = hs[i];
        m.cols[M.x_index(R.simple(i))] = xs[i];
        m.cols[M.x_index(R.neg(R.simple(i)))] = ys[i];
    }
    for (int r = 0; r < R.npos; ++r) {
        int i = M.build_index(r);
        if (i < 0) continue;
        IntVec d = R.roots[r];
        d[i] -= 1;
        int s = R.find(d);
        int g = R.simple(i);
        Scalar inv = Scalar(frac(1, M.N(g, s)));
        m.cols[M.x_index(r)] = scale(inv, target.bracket(xs[i], m.cols[M.x_index(s)]));
        int nr = R.neg(r), ns = R.neg(s), ng = R.neg(g);
        Scalar inv2 = Scalar(frac(1, M.N(ng, ns)));
        m.cols[M.x_index(nr)] = scale(inv2, target.bracket(ys[i], m.cols[M.x_index(ns)]));
    }
    return m;
}

bool satisfies_generator_relations(const LieAlgebra& L, const IntMat& C, const GeneratorTriple& g) {
    std::size_t l = C.size();
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j) {
            if (!is_zero_vec(L.bracket(g.c[i], g.c[j]))) return false;
            Vec ab = L.bracket(g.a[i], g.b[j]);
            if (i == j ? ab != g.c[i] : !is_zero_vec(ab)) return false;
            Scalar cji(C[j][i]);
            if (L.bracket(g.c[i], g.a[j]) != scale(cji, g.a[j])) return false;
            if (L.bracket(g.c[i], g.b[j]) != scale(-cji, g.b[j])) return false;
        }
    return true;
}

namespace {

// Root index r if v is a nonzero multiple of x_r, else -1.
int root_space_of(const ChevalleyModel& M, const Vec& v) {
    int found = -1;
    for (int b = 0; b < M.dim(); ++b) {
        if (v[b].is_zero()) continue;
        int r = M.root_of(b);
        if (r < 0 || found >= 0) return -1;
        found = r;
    }
    return found;
}

}  // namespace

bool verify_canonical_generators(const ChevalleyModel& M, const GeneratorTriple& g) {
    int l = M.rank();
    if (static_cast<int>(g.a.size()) != l || static_cast<int>(g.b.size()) != l || static_cast<int>(g.c.size()) != l)
        throw std::invalid_argument("verify_canonical_generators: wrong number of generators");
    std::vector<int> roots(l);
    for (int i = 0; i < l; ++i) {
        int ra = root_space_of(M, g.a[i]), rb = root_space_of(M, g.b[i]);
        if (ra < 0 || rb < 0 || rb != M.R.neg(ra))
            throw std::invalid_argument("verify_canonical_generators: a_i, b_i not in opposite root spaces");
        roots[i] = ra;
    }
    for (int i = 0; i < l; ++i) {
        Vec c = M.L.bracket(g.a[i], g.b[i]);
        if (c != g.c[i]) return false;
        if (M.L.bracket(c, g.a[i]) != scale(Scalar(2), g.a[i])) return false;
    }
    // the roots must form a basis with the model's Cartan matrix
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            if (M.R.pairing(roots[i], roots[j]) != M.R.cartan.entries[i][j]) return false;
    if (!satisfies_generator_relations(M.L, M.R.cartan.entries, g))
        throw std::logic_error("root-space criterion held but a generator relation failed");
    return true;
}

std::vector<int> reflected_simple_roots(const RootSystem& R, int k) {
    std::vector<int> out;
    for (int i = 0; i < R.rank(); ++i) {
        IntVec v = R.roots[R.simple(i)];
        v[k] -= R.cartan.entries[i][k];
        out.push_back(R.find(v));
    }
    return out;
}

GeneratorTriple simple_reflection_action(const ChevalleyModel& M, int k) {
    if (k < 0 || k >= M.rank()) throw std::invalid_argument("simple_reflection_action: index out of range");
    GeneratorTriple g;
    for (int r : reflected_simple_roots(M.R, k)) {
        g.c.push_back(M.coroot(r));
        g.a.push_back(M.x(r));
        g.b.push_back(M.x(M.R.neg(r)));
    }
    return g;
}

QMat cartan_killing(const ChevalleyModel& M) {
    QMat K = M.L.killing();
    int l = M.rank();
    QMat out(l, QVec(l));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) out[i][j] = K[M.h_index(i)][M.h_index(j)];
    return out;
}

}  // namespace lieks
