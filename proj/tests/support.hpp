#pragma once

// Independent oracles and generators shared by the unit tests and the acceptance binary.

#include "lieks/carrierdb.hpp"
#include "lieks/formid.hpp"
#include "lieks/isomorphism.hpp"

#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

namespace lieks::testing {

// ---- random exact scalars ----

inline mpq_class random_rational(std::mt19937& rng, int bound = 100) {
    std::uniform_int_distribution<int> num(-bound, bound), den(1, bound);
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline mpq_class random_nonzero_rational(std::mt19937& rng, int bound = 100) {
    mpq_class q;
    do q = random_rational(rng, bound);
    while (sgn(q) == 0);
    return q;
}

inline const std::vector<std::uint64_t>& small_squarefree() {
    static const std::vector<std::uint64_t> v = [] {
        std::vector<std::uint64_t> out;
        for (std::uint64_t k = 2; k <= 42; ++k)
            if (is_squarefree(k)) out.push_back(k);
        return out;
    }();
    return v;
}

// Sum of up to `radicands` Gaussian-rational multiples of square roots, plus a Gaussian constant.
inline Scalar random_scalar(std::mt19937& rng, int radicands = 4, int bound = 100) {
    std::uniform_int_distribution<int> count(0, radicands);
    std::uniform_int_distribution<std::size_t> pick(0, small_squarefree().size() - 1);
    Scalar u(Gauss(random_rational(rng, bound), random_rational(rng, bound)));
    int n = count(rng);
    for (int k = 0; k < n; ++k) {
        Gauss c(random_rational(rng, bound), random_rational(rng, bound));
        u += Scalar(c) * Scalar::surd(small_squarefree()[pick(rng)]);
    }
    return u;
}

// ---- field oracles ----

// Rank over GF(2) of the prime-exponent vectors of squarefree radicands.
inline int surd_rank(const std::vector<std::uint64_t>& ks) {
    std::vector<std::uint64_t> primes;
    for (auto k : ks)
        for (std::uint64_t p = 2; p <= k; ++p)
            if (k % p == 0 && std::find(primes.begin(), primes.end(), p) == primes.end()) {
                bool prime = true;
                for (std::uint64_t d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
                if (prime) primes.push_back(p);
            }
    std::vector<std::vector<int>> rows;
    for (auto k : ks) {
        std::vector<int> r;
        for (auto p : primes) r.push_back(k % p == 0 ? 1 : 0);
        rows.push_back(r);
    }
    int rank = 0;
    for (std::size_t c = 0; c < primes.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && !rows[piv][c]) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (static_cast<int>(r) != rank && rows[r][c])
                for (std::size_t j = 0; j < primes.size(); ++j) rows[r][j] ^= rows[rank][j];
        ++rank;
    }
    return rank;
}

// Conductor of Q(sqrt k) from the field discriminant.
inline std::uint64_t quadratic_conductor(std::uint64_t k) {
    if (k == 1) return 1;
    return k % 4 == 1 ? k : 4 * k;
}

// ---- orbit-count oracles (partitions and signed Young diagrams) ----

inline void partitions(int n, int max_part, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& f) {
    if (n == 0) {
        f(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions(n - p, p, cur, f);
        cur.pop_back();
    }
}

inline std::vector<std::pair<int, int>> multiplicities(const std::vector<int>& part) {
    std::vector<std::pair<int, int>> out;
    for (int p : part) {
        if (!out.empty() && out.back().first == p) ++out.back().second;
        else out.emplace_back(p, 1);
    }
    return out;
}

// Nonzero nilpotent orbits of sl_n(R): partitions, doubled when every part is even.
inline int count_sl_real(int n) {
    int total = 0;
    std::vector<int> cur;
    partitions(n, n, cur, [&](const std::vector<int>& p) {
        if (p[0] == 1) return;
        bool all_even = true;
        for (int x : p) all_even = all_even && x % 2 == 0;
        total += all_even ? 2 : 1;
    });
    return total;
}

// Nonzero nilpotent orbits of su(p,q): signed Young diagrams of signature (p,q).
inline int count_su(int p, int q) {
    int total = 0;
    std::vector<int> cur;
    partitions(p + q, p + q, cur, [&](const std::vector<int>& part) {
        if (part[0] == 1) return;
        auto mult = multiplicities(part);
        // distribute the rows of each length between + and - starts
        std::function<void(std::size_t, int, int)> rec = [&](std::size_t idx, int pp, int qq) {
            if (idx == mult.size()) {
                total += pp == p && qq == q;
                return;
            }
            auto [len, m] = mult[idx];
            for (int plus = 0; plus <= m; ++plus) {
                int minus = m - plus;
                int hi = (len + 1) / 2, lo = len / 2;
                rec(idx + 1, pp + plus * hi + minus * lo, qq + plus * lo + minus * hi);
            }
        };
        rec(0, 0, 0);
    });
    return total;
}

// Nonzero nilpotent orbits of sp(2n,R): odd rows in sign-opposite pairs, even rows with free starting sign.
inline int count_sp_real(int n) {
    int total = 0;
    std::vector<int> cur;
    partitions(2 * n, 2 * n, cur, [&](const std::vector<int>& part) {
        if (part[0] == 1) return;
        int ways = 1;
        for (auto [len, m] : multiplicities(part)) {
            if (len % 2 == 1) {
                if (m % 2 != 0) return;
            } else {
                ways *= m + 1;
            }
        }
        total += ways;
    });
    return total;
}

// ---- polynomial-system corpus ----

struct CorpusSystem {
    std::string name;
    std::vector<std::string> vars;
    std::vector<std::string> polys;
    bool solvable;  // hand-derived verdict
    // Oracle evidence: exactly one kind is used per system.
    char oracle;                             // 'g' univariate gcd, 'r' resultant in the last variable, 'w' witness, 'n' certificate
    std::vector<std::string> witness;        // ExactScalar text per variable
    std::vector<std::string> certificate;    // cofactors with sum cofactor_i * poly_i = 1
};

inline const std::vector<CorpusSystem>& polynomial_corpus() {
    static const std::vector<CorpusSystem> c = {
        {"gcd quadratic", {"x"}, {"x^2 - 2", "x^3 - 2*x"}, true, 'g', {}, {}},
        {"gcd imaginary", {"x"}, {"x^2 + 1", "x^3 + x^2 + x + 1"}, true, 'g', {}, {}},
        {"distinct surds", {"x"}, {"x^2 - 2", "x^2 - 3"}, false, 'g', {}, {}},
        {"roots of unity", {"x"}, {"x^4 - 1", "x^2 + x + 1"}, false, 'g', {}, {}},
        {"shared root", {"x"}, {"x^3 - x", "x^2 - 4*x + 3"}, true, 'g', {}, {}},
        {"circle and line", {"x", "y"}, {"x^2 + y^2 - 1", "x - y"}, true, 'r', {}, {}},
        {"parallel parabolas", {"x", "y"}, {"y^2 - x", "y^2 - x - 1"}, false, 'r', {}, {}},
        {"complex circle", {"x", "y"}, {"x^2 + y^2 + 1", "y - x"}, true, 'r', {}, {}},
        {"cusp", {"x", "y"}, {"y^3 - x^2", "y^2 - x"}, true, 'r', {}, {}},
        {"hyperbola asymptote", {"x", "y"}, {"y^2 - x^2 - 1", "y - x"}, false, 'r', {}, {}},
        {"quartic", {"x", "y"}, {"y^4 - x", "y^2 + x"}, true, 'r', {}, {}},
        {"linear slice", {"x", "y"}, {"y^2 + x*y + 1", "y - 1"}, true, 'r', {}, {}},
        {"cyclic", {"x", "y", "z"}, {"x*y - 1", "y*z - 1", "x*z - 1"}, true, 'w', {"1", "1", "1"}, {}},
        {"forced zero", {"x", "y", "z"}, {"x*y - 1", "x*z", "z - 1"}, false, 'n', {}, {"-1", "y", "-x*y"}},
        {"sphere diagonal", {"x", "y", "z"}, {"x^2 + y^2 + z^2 - 3", "x - y", "y - z"}, true, 'w', {"1", "1", "1"}, {}},
        {"parallel planes", {"x", "y", "z"}, {"x + y + z", "x + y + z - 1"}, false, 'n', {}, {"1", "-1"}},
        {"surd product", {"x", "y", "z"}, {"x^2 - 2", "y^2 - 3", "z - x*y"}, true, 'w', {"1*sqrt(2)", "1*sqrt(3)", "1*sqrt(6)"}, {}},
        {"surd clash", {"x", "y", "z"}, {"x^2 - 2", "y - x", "y^2 - 3"}, false, 'n', {}, {"1", "x + y", "-1"}},
        {"unit cube root", {"x", "y", "z"}, {"x*y*z - 1", "x - y", "y - z", "x^4 - 1"}, true, 'w', {"1", "1", "1"}, {}},
        {"square clash", {"x", "y", "z"}, {"x*y - 1", "x^2*y^2 + 1", "z^2 - x"}, false, 'n', {}, {"-1/2*x*y - 1/2", "1/2", "0"}},
    };
    return c;
}

inline PolySystem corpus_system(const CorpusSystem& cs) {
    PolySystem S;
    S.vars = cs.vars;
    for (const auto& p : cs.polys) S.polys.push_back(parse_poly(p, cs.vars));
    return S;
}

using UPoly = std::vector<mpq_class>;  // coefficient of x^k at index k

inline void trim(UPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline UPoly umod(UPoly a, const UPoly& b) {
    trim(a);
    while (a.size() >= b.size()) {
        mpq_class f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
        trim(a);
    }
    return a;
}

inline UPoly ugcd(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly r = umod(a, b);
        a = b;
        b = r;
    }
    return a;
}

// Univariate oracle: a common complex root exists iff the gcd has positive degree.
inline bool gcd_oracle(const PolySystem& S) {
    UPoly g;
    for (const auto& p : S.polys) {
        UPoly u;
        for (const auto& [m, c] : p.terms) {
            if (u.size() <= static_cast<std::size_t>(m[0])) u.resize(m[0] + 1);
            u[m[0]] = c;
        }
        g = ugcd(g, u);
    }
    trim(g);
    return g.size() > 1 || g.empty();
}

inline mpq_class det(QMat m) {
    std::size_t n = m.size();
    mpq_class d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m[p][c]) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            mpq_class f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return d;
}

// Sylvester resultant of two univariate polynomials.
inline mpq_class resultant(UPoly f, UPoly g) {
    trim(f);
    trim(g);
    std::size_t m = f.size() - 1, n = g.size() - 1, N = m + n;
    if (N == 0) return 1;
    QMat S(N, QVec(N, 0));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k <= m; ++k) S[r][r + k] = f[m - k];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t k = 0; k <= n; ++k) S[n + r][r + k] = g[n - k];
    return det(S);
}

// Resultant oracle for two polynomials in (x, y) with constant leading coefficients in y: a common root exists
// iff Res_y(f, g), a polynomial in x of degree <= 32, is not a nonzero constant. Tested on 41 sample points.
inline bool resultant_oracle(const PolySystem& S) {
    if (S.polys.size() != 2) throw std::invalid_argument("resultant oracle needs two polynomials");
    auto at = [](const Poly& p, long x) {
        UPoly u;
        for (const auto& [m, c] : p.terms) {
            if (u.size() <= static_cast<std::size_t>(m[1])) u.resize(m[1] + 1);
            mpz_class xp;
            mpz_pow_ui(xp.get_mpz_t(), mpz_class(x).get_mpz_t(), m[0]);
            u[m[1]] += c * mpq_class(xp);
        }
        return u;
    };
    std::optional<mpq_class> first;
    for (long x = 0; x <= 40; ++x) {
        UPoly f = at(S.polys[0], x), g = at(S.polys[1], x);
        trim(f);
        trim(g);
        if (f.size() != static_cast<std::size_t>(S.polys[0].degree_in(1) + 1) ||
            g.size() != static_cast<std::size_t>(S.polys[1].degree_in(1) + 1))
            throw std::invalid_argument("resultant oracle: leading coefficient in y must be constant");
        mpq_class r = resultant(f, g);
        if (sgn(r) == 0) return true;
        if (first && *first != r) return true;
        first = r;
    }
    return false;
}

inline bool certificate_holds(const CorpusSystem& cs) {
    PolySystem S = corpus_system(cs);
    int n = S.nvars();
    Poly sum(n);
    for (std::size_t k = 0; k < cs.certificate.size(); ++k) sum = sum + parse_poly(cs.certificate[k], cs.vars) * S.polys[k];
    return sum == Poly::constant(n, 1);
}

inline bool witness_holds(const CorpusSystem& cs) {
    PolySystem S = corpus_system(cs);
    std::vector<Scalar> vals;
    for (const auto& w : cs.witness) vals.push_back(Scalar::parse(w));
    for (const auto& p : S.polys)
        if (!evaluate(p, vals).is_zero()) return false;
    return true;
}

// Verdict of the independent oracle attached to a corpus entry.
inline bool oracle_verdict(const CorpusSystem& cs) {
    PolySystem S = corpus_system(cs);
    switch (cs.oracle) {
        case 'g': return gcd_oracle(S);
        case 'r': return resultant_oracle(S);
        case 'w':
            if (!witness_holds(cs)) throw std::logic_error("witness does not solve " + cs.name);
            return true;
        case 'n':
            if (!certificate_holds(cs)) throw std::logic_error("certificate fails for " + cs.name);
            return false;
    }
    throw std::logic_error("unknown oracle");
}

// ---- Lie-theoretic generators ----

inline std::vector<std::pair<char, int>> small_types() {
    return {{'A', 1}, {'A', 2}, {'A', 3}, {'B', 2}, {'C', 2}, {'G', 2}, {'B', 3}, {'C', 3}, {'A', 4}, {'D', 4}};
}

inline std::vector<RealForm> forms_of(char letter, int rank) {
    auto M = make_model(letter, rank);
    std::vector<RealForm> out;
    for (const auto& s : enumerate_involutions(letter, rank)) out.push_back(build_real_form(M, s));
    return out;
}

inline RealForm form(const std::string& id) { return build_form(parse_form_id(id)); }

inline Scalar gauss_power(const Gauss& z, int k) {
    Gauss base = k >= 0 ? z : z.conj();
    Gauss r(1);
    for (int j = 0; j < std::abs(k); ++j) r = r * base;
    return Scalar(r);
}

// x_alpha -> z^{alpha(h)} x_alpha for a unit Gaussian rational z and integer values alpha_i(h) = vals[i].
// Commutes with theta and sigma of an inner-type form built on M.
inline LinMap torus_automorphism(const ChevalleyModel& M, const Gauss& z, const std::vector<int>& vals) {
    std::vector<Vec> hs, xs, ys;
    for (int i = 0; i < M.rank(); ++i) {
        hs.push_back(M.h(i));
        xs.push_back(scale(gauss_power(z, vals[i]), M.x(M.R.simple(i))));
        ys.push_back(scale(gauss_power(z, -vals[i]), M.x(M.R.neg(M.R.simple(i)))));
    }
    return extend_generators(M, M.L, hs, xs, ys);
}

inline Sl2Triple apply(const LinMap& g, const Sl2Triple& t) { return {g(t.f), g(t.h), g(t.e), t.kind}; }

// (f, h, e) -> (-e, -h, -f): again a real-Cayley triple.
inline Sl2Triple swap_triple(const Sl2Triple& t) { return {neg(t.e), neg(t.h), neg(t.f), t.kind}; }

// Records of every non-principal carrier found by the solver in the forms that have them through rank four.
struct PipelineRecord {
    std::string form;
    CarrierRecord record;
};

inline std::vector<PipelineRecord> pipeline_records() {
    std::vector<PipelineRecord> out;
    for (const char* id : {"G2:inner:k1", "C3:inner:k3", "D4:inner:k2"}) {
        RealForm F = form(id);
        for (const auto& e : enumerate_orbits(F).entries) {
            if (e.carrier.principal) continue;
            OrbitRepresentative rep = representative_for(F, e);
            if (!rep.complex_cayley) throw std::logic_error("pipeline left a carrier unresolved");
            CarrierSystem cs = carrier_adapted_system(F, e.carrier);
            for (auto& r : make_records(F, cs, e.carrier, *rep.complex_cayley)) out.push_back({id, r});
        }
    }
    return out;
}

// Applies x_i -> z^{v_i} x_i (|z| = 1) to a record's triple; the result is again a valid record.
inline CarrierRecord twisted_record(const CarrierRecord& r, const Gauss& z, const std::vector<int>& vals) {
    RootSystem R = build_root_system({r.cartan, r.type});
    ChevalleyModel M = build_chevalley_model(R);
    LinMap g = torus_automorphism(M, z, vals);
    CarrierRecord out = r;
    out.triple = apply(g, r.triple);
    return out;
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("lieks-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
};

inline bool triples_equal(const Sl2Triple& a, const Sl2Triple& b) { return a.f == b.f && a.h == b.h && a.e == b.e && a.kind == b.kind; }

}  // namespace lieks::testing
