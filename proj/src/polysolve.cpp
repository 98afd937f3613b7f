#include "lieks/polysolve.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lieks {

Poly Poly::constant(int n, const mpq_class& c) {
    Poly p(n);
    p.add_term(Monomial(n, 0), c);
    return p;
}

Poly Poly::variable(int n, int i) {
    Poly p(n);
    Monomial m(n, 0);
    m[i] = 1;
    p.add_term(m, 1);
    return p;
}

Poly Poly::monomial(const Monomial& m, const mpq_class& c) {
    Poly p(static_cast<int>(m.size()));
    p.add_term(m, c);
    return p;
}

bool Poly::is_constant() const {
    for (const auto& [m, c] : terms)
        for (int e : m)
            if (e) return false;
    return true;
}

int Poly::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms) d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
    return d;
}

int Poly::degree_in(int var) const {
    int d = 0;
    for (const auto& [m, c] : terms) d = std::max(d, m[var]);
    return d;
}

bool Poly::involves(int var) const { return degree_in(var) > 0; }

void Poly::add_term(const Monomial& m, const mpq_class& c) {
    if (sgn(c) == 0) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, c);
        return;
    }
    it->second += c;
    if (sgn(it->second) == 0) terms.erase(it);
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    r.nvars = std::max(a.nvars, b.nvars);
    for (const auto& [m, c] : b.terms) r.add_term(m, c);
    return r;
}

Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& [m, c] : r.terms) c = -c;
    return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    Poly r(std::max(a.nvars, b.nvars));
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            Monomial m(ma.size());
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    return r;
}

Poly operator*(const mpq_class& c, const Poly& a) {
    Poly r(a.nvars);
    if (sgn(c) == 0) return r;
    r.terms = a.terms;
    for (auto& [m, v] : r.terms) v *= c;
    return r;
}

bool monomial_less(const Monomial& a, const Monomial& b, MonomialOrder o) {
    if (o == MonomialOrder::GrLex) {
        int da = std::accumulate(a.begin(), a.end(), 0), db = std::accumulate(b.begin(), b.end(), 0);
        if (da != db) return da < db;
    }
    return a < b;
}

Monomial leading_monomial(const Poly& p, MonomialOrder o) {
    if (p.is_zero()) throw std::invalid_argument("leading_monomial of zero");
    if (o == MonomialOrder::Lex) return p.terms.rbegin()->first;
    const Monomial* best = nullptr;
    for (const auto& [m, c] : p.terms)
        if (!best || monomial_less(*best, m, o)) best = &m;
    return *best;
}

mpq_class leading_coefficient(const Poly& p, MonomialOrder o) { return p.terms.at(leading_monomial(p, o)); }

namespace {

bool divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Monomial quotient(const Monomial& b, const Monomial& a) {
    Monomial q(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) q[i] = b[i] - a[i];
    return q;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial l(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
    return l;
}

bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && b[i]) return false;
    return true;
}

Poly monic(const Poly& p, MonomialOrder o) {
    mpq_class lc = leading_coefficient(p, o);
    return mpq_class(1 / lc) * p;
}

Poly shifted(const Poly& p, const Monomial& m, const mpq_class& c) {
    Poly r(p.nvars);
    for (const auto& [pm, pc] : p.terms) {
        Monomial s(pm.size());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = pm[i] + m[i];
        r.terms.emplace(s, pc * c);
    }
    return r;
}

}  // namespace

Poly reduce(const Poly& p, const std::vector<Poly>& G, MonomialOrder o) {
    Poly r(p.nvars), f = p;
    std::vector<Monomial> lms;
    for (const auto& g : G) lms.push_back(leading_monomial(g, o));
    while (!f.is_zero()) {
        Monomial m = leading_monomial(f, o);
        mpq_class c = f.terms.at(m);
        bool done = false;
        for (std::size_t i = 0; i < G.size(); ++i) {
            if (!divides(lms[i], m)) continue;
            mpq_class factor = -c / G[i].terms.at(lms[i]);
            Monomial q = quotient(m, lms[i]);
            for (const auto& [gm, gc] : G[i].terms) {
                Monomial s(gm.size());
                for (std::size_t k = 0; k < s.size(); ++k) s[k] = gm[k] + q[k];
                f.add_term(s, factor * gc);
            }
            done = true;
            break;
        }
        if (!done) {
            r.add_term(m, c);
            f.terms.erase(m);
        }
    }
    return r;
}

Poly s_polynomial(const Poly& f, const Poly& g, MonomialOrder o) {
    Monomial lf = leading_monomial(f, o), lg = leading_monomial(g, o), l = lcm(lf, lg);
    return shifted(f, quotient(l, lf), 1 / f.terms.at(lf)) - shifted(g, quotient(l, lg), 1 / g.terms.at(lg));
}

Scalar evaluate(const Poly& p, const std::vector<Scalar>& values) {
    Scalar s;
    for (const auto& [m, c] : p.terms) {
        Scalar t(c);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (int e = 0; e < m[i]; ++e) t *= values[i];
        s += t;
    }
    return s;
}

std::vector<Poly> groebner_basis(const PolySystem& S, MonomialOrder o) {
    int n = S.nvars();
    std::vector<Poly> G;
    for (const auto& p : S.polys) {
        if (p.is_zero()) continue;
        if (p.is_constant()) return {Poly::constant(n, 1)};
        Poly r = reduce(p, G, o);
        if (r.is_zero()) continue;
        if (r.is_constant()) return {Poly::constant(n, 1)};
        G.push_back(monic(r, o));
    }
    // Normal selection strategy (smallest lcm first) with the coprime and chain criteria.
    struct Pair {
        int deg;
        Monomial lcm;
        std::size_t i, j;
    };
    auto pair_less = [o](const Pair& a, const Pair& b) {
        if (a.deg != b.deg) return a.deg < b.deg;
        if (a.lcm != b.lcm) return monomial_less(a.lcm, b.lcm, o);
        return std::make_pair(a.i, a.j) < std::make_pair(b.i, b.j);
    };
    std::set<Pair, decltype(pair_less)> queue(pair_less);
    std::set<std::pair<std::size_t, std::size_t>> pending;
    std::vector<Monomial> lms;
    auto add_pairs = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            Monomial l = lcm(lms[i], lms[j]);
            queue.insert(Pair{std::accumulate(l.begin(), l.end(), 0), l, i, j});
            pending.insert({i, j});
        }
    };
    for (std::size_t j = 0; j < G.size(); ++j) {
        lms.push_back(leading_monomial(G[j], o));
        add_pairs(j);
    }
    while (!queue.empty()) {
        Pair pr = *queue.begin();
        queue.erase(queue.begin());
        pending.erase({pr.i, pr.j});
        if (coprime(lms[pr.i], lms[pr.j])) continue;
        bool chain = false;
        for (std::size_t k = 0; k < G.size() && !chain; ++k) {
            if (k == pr.i || k == pr.j || !divides(lms[k], pr.lcm)) continue;
            auto key = [](std::size_t a, std::size_t b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); };
            chain = !pending.count(key(pr.i, k)) && !pending.count(key(pr.j, k));
        }
        if (chain) continue;
        Poly r = reduce(s_polynomial(G[pr.i], G[pr.j], o), G, o);
        if (r.is_zero()) continue;
        if (r.is_constant()) return {Poly::constant(n, 1)};
        G.push_back(monic(r, o));
        lms.push_back(leading_monomial(G.back(), o));
        add_pairs(G.size() - 1);
    }
    // minimal basis
    std::vector<Poly> M;
    for (std::size_t i = 0; i < G.size(); ++i) {
        Monomial li = leading_monomial(G[i], o);
        bool redundant = false;
        for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j) continue;
            Monomial lj = leading_monomial(G[j], o);
            if (divides(lj, li) && (lj != li || j < i)) redundant = true;
        }
        if (!redundant) M.push_back(G[i]);
    }
    // reduced basis
    for (std::size_t i = 0; i < M.size(); ++i) {
        std::vector<Poly> others;
        for (std::size_t j = 0; j < M.size(); ++j)
            if (j != i) others.push_back(M[j]);
        M[i] = monic(reduce(M[i], others, o), o);
    }
    std::sort(M.begin(), M.end(), [&](const Poly& a, const Poly& b) {
        return monomial_less(leading_monomial(b, o), leading_monomial(a, o), o);
    });
    return M;
}

bool solvable_over_C(const PolySystem& S) {
    auto G = groebner_basis(S);
    return !(G.size() == 1 && G[0].is_constant());
}

namespace {

PolySystem restrict_to(const PolySystem& S, const std::vector<int>& kept) {
    PolySystem R;
    int k = static_cast<int>(kept.size());
    for (int v : kept) R.vars.push_back(S.vars[v]);
    std::vector<char> is_kept(S.nvars(), 0);
    for (int v : kept) is_kept[v] = 1;
    for (const auto& p : S.polys) {
        Poly q(k);
        for (const auto& [m, c] : p.terms) {
            bool zero = false;
            for (int v = 0; v < S.nvars(); ++v)
                if (m[v] && !is_kept[v]) zero = true;
            if (zero) continue;
            Monomial mm(k);
            for (int j = 0; j < k; ++j) mm[j] = m[kept[j]];
            q.add_term(mm, c);
        }
        if (!q.is_zero()) R.polys.push_back(q);
    }
    return R;
}

int leading_variable(const Monomial& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i]) return static_cast<int>(i);
    return -1;
}

// Reads a solution off a reduced lex basis made of T^2 - a, T - a and T_c - sum a_k T_k^2 - b.
std::optional<std::vector<Scalar>> read_shape(const std::vector<Poly>& G, int k) {
    std::vector<Scalar> val(k, Scalar(1));
    std::vector<char> lead(k, 0);
    struct Combo {
        int var;
        std::vector<std::pair<int, mpq_class>> squares;
        mpq_class constant;
    };
    std::vector<Combo> combos;
    for (const auto& g : G) {
        Monomial lm = leading_monomial(g);
        int v = leading_variable(lm);
        if (v < 0 || lead[v]) return std::nullopt;
        lead[v] = 1;
        int deg = lm[v];
        bool other_vars = false;
        for (const auto& [m, c] : g.terms)
            for (int j = 0; j < k; ++j)
                if (j != v && m[j]) other_vars = true;
        if (!other_vars) {
            mpq_class a = 0;
            for (const auto& [m, c] : g.terms) {
                if (m[v] == 0) a = -c;
                else if (m[v] != deg) return std::nullopt;
            }
            if (deg == 1) val[v] = Scalar(a);
            else if (deg == 2) val[v] = Scalar::sqrt_rational(a);
            else return std::nullopt;
            continue;
        }
        if (deg != 1) return std::nullopt;
        Combo cb{v, {}, 0};
        for (const auto& [m, c] : g.terms) {
            if (m == lm) continue;
            int nz = 0, var = -1;
            for (int j = 0; j < k; ++j)
                if (m[j]) {
                    ++nz;
                    var = j;
                }
            if (nz == 0) {
                cb.constant = -c;
            } else if (nz == 1 && m[var] == 2 && var != v) {
                cb.squares.push_back({var, -c});
            } else {
                return std::nullopt;
            }
        }
        combos.push_back(cb);
    }
    for (const auto& cb : combos) {
        Scalar s(cb.constant);
        for (const auto& [var, a] : cb.squares) {
            if (lead[var]) return std::nullopt;
            s += Scalar(a) * val[var] * val[var];
        }
        val[cb.var] = s;
    }
    return val;
}

bool next_combination(std::vector<int>& c, int n) {
    int k = static_cast<int>(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Univariate roots in Q^sqrt(i) of sum c_d T^d, degree at most 2 with rational discriminant.
std::vector<Scalar> small_roots(const std::vector<Scalar>& c) {
    int deg = static_cast<int>(c.size()) - 1;
    while (deg > 0 && c[deg].is_zero()) --deg;
    if (deg == 1) return {-c[0] / c[1]};
    if (deg != 2) return {};
    Scalar disc = c[1] * c[1] - Scalar(4) * c[2] * c[0];
    if (!disc.is_rational()) return {};
    Scalar r = Scalar::sqrt_rational(disc.rational_value()), two_a = Scalar(2) * c[2];
    if (r.is_zero()) return {-c[1] / two_a};
    return {(r - c[1]) / two_a, (-r - c[1]) / two_a};
}

// Back-substitution through a lex basis, last variable first; free variables get the value 1.
// Calls found() on every complete assignment until it returns true.
bool lift(const std::vector<Poly>& G, int k, std::vector<Scalar>& val, int v,
          const std::function<bool(const std::vector<Scalar>&)>& found) {
    if (v < 0) return found(val);
    std::vector<std::vector<Scalar>> subs;
    for (const auto& g : G) {
        if (leading_variable(leading_monomial(g)) != v) continue;
        std::vector<Scalar> u(g.degree_in(v) + 1);
        for (const auto& [m, c] : g.terms) {
            Scalar t(c);
            for (int j = v + 1; j < k; ++j)
                for (int e = 0; e < m[j]; ++e) t *= val[j];
            u[m[v]] += t;
        }
        bool zero = true;
        for (std::size_t d = 1; d < u.size(); ++d) zero = zero && u[d].is_zero();
        if (zero && !u[0].is_zero()) return false;
        if (!zero) subs.push_back(u);
    }
    if (subs.empty()) {
        val[v] = Scalar(1);
        return lift(G, k, val, v - 1, found);
    }
    std::size_t best = 0;
    auto degree = [](const std::vector<Scalar>& u) {
        int d = static_cast<int>(u.size()) - 1;
        while (d > 0 && u[d].is_zero()) --d;
        return d;
    };
    for (std::size_t i = 1; i < subs.size(); ++i)
        if (degree(subs[i]) < degree(subs[best])) best = i;
    for (const Scalar& root : small_roots(subs[best])) {
        bool ok = true;
        for (const auto& u : subs) {
            Scalar s, pw(1);
            for (const auto& c : u) {
                s += c * pw;
                pw *= root;
            }
            if (!s.is_zero()) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        val[v] = root;
        if (lift(G, k, val, v - 1, found)) return true;
    }
    return false;
}

}  // namespace

std::optional<StructuredSolution> structured_solve(const PolySystem& S, const StructuredSolveOptions& opt) {
    int n = S.nvars();
    int top = opt.max_kept < 0 ? n : std::min(n, opt.max_kept);
    for (int i = 1; i <= top; ++i) {
        std::vector<int> kept(i);
        std::iota(kept.begin(), kept.end(), 0);
        do {
            PolySystem R = restrict_to(S, kept);
            if (opt.on_restriction) opt.on_restriction(R);
            auto G = groebner_basis(R);
            if (G.size() == 1 && G[0].is_constant()) continue;
            std::optional<StructuredSolution> hit;
            auto try_values = [&](const std::vector<Scalar>& sub) {
                std::vector<Scalar> values(n, Scalar(0));
                for (int j = 0; j < i; ++j) values[kept[j]] = sub[j];
                for (const auto& p : S.polys)
                    if (!evaluate(p, values).is_zero()) return false;
                if (opt.accept && !opt.accept(values)) return false;
                hit = StructuredSolution{values, kept, G};
                return true;
            };
            auto shape = read_shape(G, i);
            if (shape && try_values(*shape)) return hit;
            if (opt.lifting) {
                std::vector<Scalar> val(i, Scalar(0));
                if (lift(G, i, val, i - 1, try_values)) return hit;
            }
        } while (next_combination(kept, n));
    }
    return std::nullopt;
}

std::string poly_to_string(const Poly& p, const std::vector<std::string>& vars) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string cs = rational_str(abs(c));
        if (first) out += sgn(c) < 0 ? "-" : "";
        else out += sgn(c) < 0 ? "-" : "+";
        out += cs;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (!m[i]) continue;
            out += "*" + vars[i];
            if (m[i] > 1) out += "^" + std::to_string(m[i]);
        }
        first = false;
    }
    return out;
}

Poly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    int n = static_cast<int>(vars.size());
    Poly p(n);
    std::size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("parse_poly: " + why + " in '" + text + "'");
    };
    auto read_var = [&]() {
        std::size_t best = 0;
        int which = -1;
        for (int v = 0; v < n; ++v)
            if (s.compare(i, vars[v].size(), vars[v]) == 0 && vars[v].size() > best) {
                best = vars[v].size();
                which = v;
            }
        if (which < 0) fail("unknown variable");
        i += best;
        return which;
    };
    auto read_int = [&]() {
        std::size_t st = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (st == i) fail("expected integer");
        return s.substr(st, i - st);
    };
    if (s.empty()) fail("empty input");
    if (s == "0") return p;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            fail("expected sign");
        }
        mpq_class c = 1;
        Monomial m(n, 0);
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            std::string num = read_int();
            if (i < s.size() && s[i] == '/') {
                ++i;
                num += "/" + read_int();
            }
            c = parse_rational(num);
        } else {
            int v = read_var();
            m[v] = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                m[v] = std::stoi(read_int());
            }
        }
        while (i < s.size() && s[i] == '*') {
            ++i;
            int v = read_var();
            int e = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                e = std::stoi(read_int());
            }
            m[v] += e;
        }
        p.add_term(m, sign * c);
    }
    return p;
}

std::string system_to_string(const PolySystem& S) {
    std::ostringstream os;
    os << "vars:";
    for (const auto& v : S.vars) os << " " << v;
    os << "\n";
    for (const auto& p : S.polys) os << poly_to_string(p, S.vars) << "\n";
    return os.str();
}

}  // namespace lieks
