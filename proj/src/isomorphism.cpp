#include "lieks/isomorphism.hpp"

#include "lieks/chevsys.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

namespace lieks {

namespace {

std::pair<char, int> type_of(const ChevalleyModel& M) {
    const std::string& t = M.R.cartan.type;
    if (t.size() < 2 || t.find('+') != std::string::npos) throw std::invalid_argument("isomorphism: simple type required");
    return {t[0], std::stoi(t.substr(1))};
}

std::string show(const std::vector<int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

Scalar ratio(const Vec& u, const Vec& v, const char* what) {
    auto c = proportionality(u, v);
    if (!c || c->is_zero()) throw std::logic_error(std::string("isomorphism: ") + what);
    return *c;
}

// Rescales the partners of non-fixed generators so theta(x_i) = x_pi(i), then reads lambda.
void normalize(const RealStructure& S, ParameterState& P) {
    int l = static_cast<int>(P.pi.size());
    for (int i = 0; i < l; ++i) {
        int j = P.pi[i];
        if (j <= i) continue;
        Scalar c = ratio(S.theta(P.gens.a[i]), P.gens.a[j], "basis of simple roots not theta-stable");
        P.gens.a[j] = scale(c, P.gens.a[j]);
        P.gens.b[j] = scale(c.inverse(), P.gens.b[j]);
    }
    P.lambda.assign(l, 1);
    for (int i = 0; i < l; ++i) {
        Vec t = S.theta(P.gens.a[i]);
        if (P.pi[i] != i) {
            if (t != P.gens.a[P.pi[i]]) throw std::logic_error("isomorphism: theta(x_i) != x_pi(i) after normalization");
            continue;
        }
        Scalar c = ratio(t, P.gens.a[i], "basis of simple roots not theta-stable");
        if (c == Scalar(1)) P.lambda[i] = 1;
        else if (c == Scalar(-1)) P.lambda[i] = -1;
        else throw std::logic_error("isomorphism: theta parameter is not +-1");
    }
}

void check_state(const RealStructure& S, const ParameterState& P) {
    if (!satisfies_generator_relations(S.model->L, P.abstract->R.cartan.entries, P.gens))
        throw std::logic_error("isomorphism: generators are not a canonical generating set");
}

bool commutes(const IntVec& d, const IntVec& pi) {
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[pi[i]] != pi[d[i]]) return false;
    return true;
}

}  // namespace

std::vector<IntVec> diagram_automorphisms(char letter, int rank) {
    std::vector<IntVec> out;
    if (letter == 'A' && rank >= 2) {
        IntVec d(rank);
        for (int i = 0; i < rank; ++i) d[i] = rank - 1 - i;
        out.push_back(d);
    } else if (letter == 'D' && rank == 4) {
        IntVec outer{0, 2, 3};
        IntVec p = outer;
        while (std::next_permutation(p.begin(), p.end())) {
            IntVec d{0, 1, 2, 3};
            for (int k = 0; k < 3; ++k) d[outer[k]] = p[k];
            out.push_back(d);
        }
        // next_permutation starting from the sorted order visits the 5 nontrivial ones
    } else if (letter == 'D' && rank > 4) {
        IntVec d(rank);
        std::iota(d.begin(), d.end(), 0);
        std::swap(d[rank - 2], d[rank - 1]);
        out.push_back(d);
    } else if (letter == 'E' && rank == 6) {
        out.push_back({5, 1, 4, 3, 2, 0});
    }
    return out;
}

std::vector<int> permitted_indices(char letter, int rank) {
    std::vector<int> ks;
    auto upto = [&](int m) {
        for (int k = 1; k <= m; ++k) ks.push_back(k);
    };
    switch (letter) {
        case 'A': upto((rank + 1) / 2); break;
        case 'B': upto(rank); break;
        case 'C':
            upto(rank / 2);
            if (ks.empty() || ks.back() != rank) ks.push_back(rank);
            break;
        case 'D':
            if (rank == 4) ks = {1, 2};
            else {
                upto(rank / 2);
                ks.push_back(rank - 1);
            }
            break;
        case 'G': ks = {1}; break;
        case 'F': ks = {2, 3}; break;
        case 'E':
            if (rank == 6) ks = {1, 2};
            else if (rank == 7) ks = {1, 2, 7};
            else ks = {1, 8};
            break;
        default: break;
    }
    return ks;
}

bool is_standard(char letter, int rank, const std::vector<int>& lambda, const std::vector<int>& pi) {
    std::vector<int> neg;
    for (int i = 0; i < rank; ++i)
        if (lambda[i] == -1) neg.push_back(i);
    if (neg.size() > 1) return false;
    if (neg.empty()) return true;
    bool inner = true;
    for (int i = 0; i < rank; ++i) inner = inner && pi[i] == i;
    if (inner) {
        auto ks = permitted_indices(letter, rank);
        return std::find(ks.begin(), ks.end(), neg[0] + 1) != ks.end();
    }
    for (int i = 0; i < rank; ++i)
        if (pi[i] == i) return neg[0] == i;
    return false;
}

std::vector<int> predicted_parameters(const IntMat& cartan, const std::vector<int>& lambda, const std::vector<int>& pi, int k) {
    std::vector<int> out(lambda.size(), 1);
    for (std::size_t j = 0; j < lambda.size(); ++j) {
        if (pi[j] != static_cast<int>(j)) continue;
        // lambda_k is a sign, so lambda_k^-1 = lambda_k and only the parity of the exponent matters
        out[j] = lambda[j] * (cartan[j][k] % 2 != 0 ? lambda[k] : 1);
    }
    return out;
}

ParameterState initial_state(const RealStructure& S) {
    const ChevalleyModel& M = *S.model;
    const RootSystem& R = M.R;
    auto [letter, rank] = type_of(M);
    int l = R.rank();
    ParameterState P;
    P.abstract = make_model(letter, rank);

    QMat theta_h(l, QVec(l));
    for (int j = 0; j < l; ++j) {
        Vec col = S.theta(M.h(j));
        for (int b = 0; b < M.dim(); ++b) {
            bool cartan = M.root_of(b) < 0;
            if (!cartan && !col[b].is_zero()) throw std::invalid_argument("isomorphism: model Cartan subalgebra not theta-stable");
        }
        for (int i = 0; i < l; ++i) {
            if (!col[M.h_index(i)].is_rational()) throw std::invalid_argument("isomorphism: theta not rational on the Cartan subalgebra");
            theta_h[i][j] = col[M.h_index(i)].rational_value();
        }
    }
    QMat shifted = theta_h;
    for (int i = 0; i < l; ++i) shifted[i][i] -= 1;
    QMat fixed = nullspace(shifted, l);
    int d = static_cast<int>(fixed.size());
    if (d == 0) throw std::logic_error("isomorphism: h_0 is zero");

    const IntMat& C = R.cartan.entries;
    auto root_value = [&](int r, const QVec& a) {
        mpq_class v = 0;
        for (int k = 0; k < l; ++k) {
            if (R.roots[r][k] == 0) continue;
            mpq_class s = 0;
            for (int j = 0; j < l; ++j) s += C[k][j] * a[j];
            v += R.roots[r][k] * s;
        }
        return v;
    };
    // Regular element of h_{0,R}: small integer combinations of the fixed basis, by increasing max-norm.
    std::optional<QVec> h0;
    for (int N = 1; !h0 && N <= 16; ++N) {
        std::vector<int> c(d, -N);
        while (true) {
            int mx = 0;
            for (int x : c) mx = std::max(mx, std::abs(x));
            if (mx == N) {
                QVec a(l, 0);
                for (int k = 0; k < d; ++k)
                    for (int i = 0; i < l; ++i) a[i] += c[k] * fixed[k][i];
                bool regular = true;
                for (int r = 0; r < R.npos && regular; ++r) regular = sgn(root_value(r, a)) != 0;
                if (regular) {
                    h0 = a;
                    break;
                }
            }
            int p = d - 1;
            while (p >= 0 && c[p] == N) c[p--] = -N;
            if (p < 0) break;
            ++c[p];
        }
    }
    if (!h0) throw std::logic_error("isomorphism: no regular element found");

    std::vector<int> positive;
    for (int r = 0; r < R.size(); ++r)
        if (sgn(root_value(r, *h0)) > 0) positive.push_back(r);
    std::vector<char> is_sum(R.size(), 0);
    for (int a : positive)
        for (int b : positive) {
            int s = R.sum(a, b);
            if (s >= 0) is_sum[s] = 1;
        }
    std::vector<int> delta;
    for (int r : positive)
        if (!is_sum[r]) delta.push_back(r);
    if (static_cast<int>(delta.size()) != l) throw std::logic_error("isomorphism: wrong number of simple roots");

    IntVec target_pi(l);
    std::iota(target_pi.begin(), target_pi.end(), 0);
    if (S.outer) target_pi = standard_diagram_involution(letter, rank);
    std::vector<int> perm(l);
    std::iota(perm.begin(), perm.end(), 0);
    bool found = false;
    do {
        bool ok = true;
        for (int i = 0; i < l && ok; ++i)
            for (int j = 0; j < l && ok; ++j) ok = R.pairing(delta[perm[i]], delta[perm[j]]) == P.abstract->R.cartan.entries[i][j];
        if (!ok) continue;
        IntVec pi(l, -1);
        for (int i = 0; i < l && ok; ++i) {
            Vec t = S.theta(M.x(delta[perm[i]]));
            for (int j = 0; j < l; ++j)
                if (proportionality(t, M.x(delta[perm[j]]))) pi[i] = j;
            ok = pi[i] >= 0;
        }
        if (ok && pi == target_pi) {
            found = true;
            break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!found) throw std::logic_error("isomorphism: no labeling of the theta-stable basis matches the diagram involution");

    P.pi = target_pi;
    for (int i = 0; i < l; ++i) {
        int r = delta[perm[i]];
        P.gens.c.push_back(M.coroot(r));
        P.gens.a.push_back(M.x(r));
        P.gens.b.push_back(M.x(R.neg(r)));
    }
    normalize(S, P);
    check_state(S, P);
    return P;
}

ParameterState weyl_parameter_update(const RealStructure& S, const ParameterState& P, int k) {
    int l = static_cast<int>(P.pi.size());
    if (k < 0 || k >= l) throw std::invalid_argument("weyl_parameter_update: index out of range");
    if (P.pi[k] != k) throw std::invalid_argument("weyl_parameter_update: alpha_k is not theta-fixed");
    const LieAlgebra& L = S.model->L;
    LinMap A = extend_generators(*P.abstract, L, P.gens.c, P.gens.a, P.gens.b);
    GeneratorTriple w = simple_reflection_action(*P.abstract, k);
    ParameterState Q = P;
    for (int i = 0; i < l; ++i) {
        Q.gens.c[i] = A(w.c[i]);
        Q.gens.a[i] = A(w.a[i]);
        Q.gens.b[i] = A(w.b[i]);
    }
    normalize(S, Q);
    check_state(S, Q);
    Q.log.push_back("s" + std::to_string(k + 1));
    return Q;
}

ParameterState diagram_move(const RealStructure& S, const ParameterState& P, const IntVec& d) {
    int l = static_cast<int>(P.pi.size());
    const IntMat& C = P.abstract->R.cartan.entries;
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            if (C[d[i]][d[j]] != C[i][j]) throw std::invalid_argument("diagram_move: not a diagram automorphism");
    if (!commutes(d, P.pi)) throw std::invalid_argument("diagram_move: does not commute with pi");
    ParameterState Q = P;
    for (int i = 0; i < l; ++i) {
        Q.gens.c[i] = P.gens.c[d[i]];
        Q.gens.a[i] = P.gens.a[d[i]];
        Q.gens.b[i] = P.gens.b[d[i]];
    }
    normalize(S, Q);
    check_state(S, Q);
    std::string s = "d";
    for (int x : d) s += std::to_string(x + 1);
    Q.log.push_back(s);
    return Q;
}

ParameterState standard_form(const RealStructure& S, const ParameterState& P) {
    auto [letter, rank] = type_of(*S.model);
    const IntMat& C = P.abstract->R.cartan.entries;
    int l = rank;
    struct Move {
        int k;      // reflection index, or -1
        IntVec d;   // diagram automorphism when k < 0
    };
    std::vector<Move> moves;
    for (int k = 0; k < l; ++k)
        if (P.pi[k] == k) moves.push_back({k, {}});
    for (const auto& d : diagram_automorphisms(letter, rank))
        if (commutes(d, P.pi)) moves.push_back({-1, d});
    auto apply = [&](const std::vector<int>& lam, const Move& m) {
        if (m.k >= 0) return predicted_parameters(C, lam, P.pi, m.k);
        std::vector<int> out(l);
        for (int i = 0; i < l; ++i) out[i] = lam[m.d[i]];
        return out;
    };
    std::map<std::vector<int>, std::pair<std::vector<int>, int>> parent;
    std::deque<std::vector<int>> queue{P.lambda};
    parent[P.lambda] = {{}, -1};
    while (!queue.empty()) {
        auto cur = queue.front();
        queue.pop_front();
        for (std::size_t m = 0; m < moves.size(); ++m) {
            auto nxt = apply(cur, moves[m]);
            if (parent.count(nxt)) continue;
            parent[nxt] = {cur, static_cast<int>(m)};
            queue.push_back(nxt);
        }
    }
    std::optional<std::vector<int>> target;
    auto rank_of = [](const std::vector<int>& lam) {
        std::vector<int> key{static_cast<int>(std::count(lam.begin(), lam.end(), -1))};
        for (std::size_t i = 0; i < lam.size(); ++i)
            if (lam[i] == -1) key.push_back(static_cast<int>(i));
        return key;
    };
    for (const auto& [lam, _] : parent)
        if (is_standard(letter, rank, lam, P.pi) && (!target || rank_of(lam) < rank_of(*target))) target = lam;
    if (!target) throw std::logic_error("standard_form: no standard parameters reachable from " + show(P.lambda));
    std::vector<int> path;
    for (auto cur = *target; parent[cur].second >= 0; cur = parent[cur].first) path.push_back(parent[cur].second);
    std::reverse(path.begin(), path.end());
    ParameterState Q = P;
    for (int m : path) {
        auto expect = apply(Q.lambda, moves[m]);
        Q = moves[m].k >= 0 ? weyl_parameter_update(S, Q, moves[m].k) : diagram_move(S, Q, moves[m].d);
        if (Q.lambda != expect)
            throw std::logic_error("standard_form: parameter update rule disagrees with the generators: " + show(Q.lambda) +
                                   " vs " + show(expect));
    }
    return Q;
}

namespace {

IsomorphismResult iso_core(const RealStructure& a, const RealStructure& b) {
    IsomorphismResult res;
    if (a.model->R.cartan.type != b.model->R.cartan.type) {
        res.reason = "different complex types";
        return res;
    }
    res.state_a = standard_form(a, initial_state(a));
    res.state_b = standard_form(b, initial_state(b));
    const ParameterState& Pa = res.state_a;
    const ParameterState& Pb = res.state_b;
    if (Pa.pi != Pb.pi) {
        res.reason = "diagram involutions differ";
        return res;
    }
    if (Pa.lambda != Pb.lambda) {
        res.reason = "standard forms differ: " + show(Pa.lambda) + " vs " + show(Pb.lambda);
        return res;
    }
    std::size_t l = Pa.pi.size();
    GeneratorTriple gb;
    for (std::size_t i = 0; i < l; ++i) {
        Scalar ra = ratio(a.sigma(Pa.gens.a[i]), Pa.gens.b[Pa.pi[i]], "sigma(x_i) not a multiple of y_pi(i)");
        Scalar rb = ratio(b.sigma(Pb.gens.a[i]), Pb.gens.b[Pb.pi[i]], "sigma(x_i) not a multiple of y_pi(i)");
        Scalar q = ra / rb;
        if (!q.is_rational() || sgn(q.rational_value()) <= 0) throw std::logic_error("isomorphism: r_i / r'_i is not a positive rational");
        Scalar mu = Scalar::sqrt_rational(q.rational_value());
        res.mu.push_back(mu);
        gb.c.push_back(Pb.gens.c[i]);
        gb.a.push_back(scale(mu, Pb.gens.a[i]));
        gb.b.push_back(scale(mu.inverse(), Pb.gens.b[i]));
    }
    const ChevalleyModel& M = *Pa.abstract;
    LinMap A = extend_generators(M, a.model->L, Pa.gens.c, Pa.gens.a, Pa.gens.b);
    LinMap B = extend_generators(M, b.model->L, gb.c, gb.a, gb.b);
    res.psi = compose(B, inverse_map(A));
    res.images = gb;
    if (!is_homomorphism(a.model->L, b.model->L, res.psi)) throw std::logic_error("isomorphism: psi is not a homomorphism");
    res.theta_certified = maps_equal(compose(res.psi, a.theta), compose(b.theta, res.psi));
    res.sigma_certified = maps_equal(compose(res.psi, a.sigma), compose(b.sigma, res.psi));
    res.isomorphic = res.theta_certified && res.sigma_certified;
    if (!res.isomorphic) res.reason = "certification failed";
    return res;
}

}  // namespace

IsomorphismResult isomorphism_inner(const RealStructure& a, const RealStructure& b) {
    if (a.outer && b.outer) throw std::invalid_argument("isomorphism_inner: both forms are of outer type");
    if (a.outer != b.outer) {
        IsomorphismResult res;
        res.reason = "one form is of inner type, the other of outer type";
        return res;
    }
    return iso_core(a, b);
}

IsomorphismResult isomorphism_outer(const RealStructure& a, const RealStructure& b) {
    if (!a.outer && !b.outer) throw std::invalid_argument("isomorphism_outer: both forms are of inner type");
    if (a.outer != b.outer) {
        IsomorphismResult res;
        res.reason = "one form is of inner type, the other of outer type";
        return res;
    }
    return iso_core(a, b);
}

IsomorphismResult isomorphism(const RealStructure& a, const RealStructure& b) {
    if (a.outer != b.outer) {
        IsomorphismResult res;
        res.reason = "one form is of inner type, the other of outer type";
        return res;
    }
    return a.outer ? isomorphism_outer(a, b) : isomorphism_inner(a, b);
}

Vec map_orbit(const IsomorphismResult& r, const RealStructure& a, const RealStructure& b, const Vec& e) {
    if (!r.isomorphic) throw std::invalid_argument("map_orbit: forms are not isomorphic");
    if (!is_ad_nilpotent(a.model->L, e)) throw std::invalid_argument("map_orbit: element is not nilpotent");
    if (a.sigma(e) != e) throw std::invalid_argument("map_orbit: element is not in the real form");
    Vec out = r.psi(e);
    if (b.sigma(out) != out) throw std::logic_error("map_orbit: image is not real");
    return out;
}

RealStructure conjugate_structure(const RealStructure& S, const LinMap& g) {
    LinMap gi = inverse_map(g);
    return {S.model, compose(g, compose(S.theta, gi)), compose(g, compose(S.sigma, gi)), S.outer};
}

LinMap random_weyl_automorphism(const ChevalleyModel& M, std::mt19937& rng, int length) {
    int l = M.rank();
    GeneratorTriple G{M.gens_h(), M.gens_x(), M.gens_y()};
    std::uniform_int_distribution<int> pick(0, l - 1);
    for (int s = 0; s < length; ++s) {
        LinMap A = extend_generators(M, M.L, G.c, G.a, G.b);
        GeneratorTriple w = simple_reflection_action(M, pick(rng));
        for (int i = 0; i < l; ++i) {
            G.c[i] = A(w.c[i]);
            G.a[i] = A(w.a[i]);
            G.b[i] = A(w.b[i]);
        }
    }
    static const int nums[] = {1, 2, 3, -1, -2, 5};
    static const int dens[] = {1, 1, 2, 3, 1, 4};
    std::uniform_int_distribution<int> sc(0, 5);
    for (int i = 0; i < l; ++i) {
        Scalar t(frac(nums[sc(rng)], dens[sc(rng)]));
        G.a[i] = scale(t, G.a[i]);
        G.b[i] = scale(t.inverse(), G.b[i]);
    }
    LinMap g = extend_generators(M, M.L, G.c, G.a, G.b);
    if (!is_homomorphism(M.L, M.L, g)) throw std::logic_error("random_weyl_automorphism: not an automorphism");
    return g;
}

}  // namespace lieks
