#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace lieks;
using namespace lieks::testing;

namespace {

// Brute-force reflection closure of the simple roots.
std::set<IntVec> closure(const IntMat& C) {
    int l = static_cast<int>(C.size());
    std::set<IntVec> roots;
    std::vector<IntVec> todo;
    for (int i = 0; i < l; ++i) {
        IntVec v(l, 0);
        v[i] = 1;
        roots.insert(v);
        todo.push_back(v);
    }
    while (!todo.empty()) {
        IntVec b = todo.back();
        todo.pop_back();
        for (int i = 0; i < l; ++i) {
            int p = 0;
            for (int k = 0; k < l; ++k) p += b[k] * C[k][i];
            IntVec r = b;
            r[i] -= p;
            if (roots.insert(r).second) todo.push_back(r);
        }
    }
    return roots;
}

int positives(const std::set<IntVec>& roots) {
    int n = 0;
    for (const auto& r : roots) {
        bool pos = true;
        for (int x : r) pos = pos && x >= 0;
        n += pos;
    }
    return n;
}

}  // namespace

TEST_CASE("root systems match the reflection closure") {
    CHECK(build_root_system(cartan_matrix('A', 1)).npos == 1);
    CHECK(build_root_system(cartan_matrix('A', 2)).npos == 3);
    CHECK(build_root_system(cartan_matrix('G', 2)).npos == 6);
    for (auto [c, n] : small_types()) {
        CAPTURE(c);
        CAPTURE(n);
        CartanMatrix C = cartan_matrix(c, n);
        RootSystem R = build_root_system(C);
        auto oracle = closure(C.entries);
        CHECK(R.size() == static_cast<int>(oracle.size()));
        CHECK(R.npos == positives(oracle));
        for (const auto& r : R.roots) CHECK(oracle.count(r) == 1);
    }
}

TEST_CASE("cartan matrix validation") {
    CHECK_THROWS_AS(build_root_system({{{2, -1}, {-1, 3}}, ""}), std::invalid_argument);
    CHECK_THROWS_AS(build_root_system({{{2, -2}, {-2, 2}}, ""}), std::invalid_argument);  // affine
    CHECK_THROWS_AS(cartan_matrix('B', 9), std::invalid_argument);
    CHECK(classify_cartan({{2, 0}, {0, 2}}) == "A1+A1");
    CHECK(classify_cartan(cartan_matrix('G', 2).entries) == "G2");
    CHECK(classify_cartan(cartan_matrix('C', 3).entries) == "C3");
}

TEST_CASE("chevalley models are Lie algebras with integral constants") {
    for (auto [c, n] : small_types()) {
        CAPTURE(c);
        CAPTURE(n);
        auto M = make_model(c, n);
        CHECK(M->L.antisymmetric());
        if (M->dim() <= 21) CHECK(M->L.jacobi());
        const RootSystem& R = M->R;
        for (int a = 0; a < R.size(); ++a) {
            // [h_i, x_a] = a(h_i) x_a
            for (int i = 0; i < R.rank(); ++i)
                CHECK(M->L.bracket(M->h(i), M->x(a)) == scale(Scalar(R.pairing_vec(R.roots[a], R.roots[R.simple(i)])), M->x(a)));
            // [x_a, x_-a] = h_a
            CHECK(M->L.bracket(M->x(a), M->x(R.neg(a))) == M->coroot(a));
        }
        // N_{a,b} = +-(p+1) with p the largest integer such that b - p a is a root
        for (int a = 0; a < R.size(); ++a)
            for (int b = 0; b < R.size(); ++b) {
                if (R.sum(a, b) < 0) continue;
                int p = 0;
                IntVec v = R.roots[b];
                while (true) {
                    for (int k = 0; k < R.rank(); ++k) v[k] -= R.roots[a][k];
                    if (R.find(v) < 0) break;
                    ++p;
                }
                CHECK(std::abs(M->N(a, b)) == p + 1);
            }
    }
}

TEST_CASE("canonical generators") {
    auto M = make_model('A', 2);
    GeneratorTriple g{M->gens_h(), M->gens_x(), M->gens_y()};
    CHECK(verify_canonical_generators(*M, g));
    GeneratorTriple doubled = g;
    doubled.a[0] = scale(Scalar(2), g.a[0]);
    doubled.c[0] = M->L.bracket(doubled.a[0], doubled.b[0]);
    CHECK_FALSE(verify_canonical_generators(*M, doubled));
    std::mt19937 rng(3);
    for (int t = 0; t < 10; ++t) {
        GeneratorTriple s = g;
        for (int i = 0; i < 2; ++i) {
            Scalar u = random_scalar(rng, 2, 9);
            if (u.is_zero()) u = Scalar(1);
            s.a[i] = scale(u, s.a[i]);
            s.b[i] = scale(u.inverse(), s.b[i]);
        }
        CHECK(verify_canonical_generators(*M, s));
    }
    GeneratorTriple wrong = g;
    wrong.a[0] = g.a[1];
    CHECK_THROWS_AS(verify_canonical_generators(*M, wrong), std::invalid_argument);
}

TEST_CASE("simple reflections act on generators") {
    for (auto [c, n] : small_types()) {
        auto M = make_model(c, n);
        const RootSystem& R = M->R;
        for (int k = 0; k < R.rank(); ++k) {
            GeneratorTriple w = simple_reflection_action(*M, k);
            CHECK(verify_canonical_generators(*M, w));
            CHECK(satisfies_generator_relations(M->L, R.cartan.entries, w));
            auto once = reflected_simple_roots(R, k);
            for (int i = 0; i < R.rank(); ++i) {
                // s_k applied to s_k(alpha_i) restores alpha_i
                int p = R.pairing(once[i], R.simple(k));
                IntVec v = R.roots[once[i]];
                v[k] -= p;
                CHECK(R.find(v) == R.simple(i));
            }
            LinMap A = extend_generators(*M, M->L, w.c, w.a, w.b);
            CHECK(is_homomorphism(M->L, M->L, A));
        }
    }
}

TEST_CASE("table export") {
    auto M = make_model('A', 1);
    std::string t = M->L.table_text();
    CHECK(t.find("[x1,h1] = -2*x1") != std::string::npos);
    CHECK(t.find("[x1,y1] = 1*h1") != std::string::npos);
}
