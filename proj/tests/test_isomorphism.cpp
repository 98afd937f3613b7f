#include "support.hpp"

#include <doctest.h>

using namespace lieks;
using namespace lieks::testing;

namespace {

RealStructure inner_structure(char letter, int rank, const std::vector<int>& lambda) {
    InvolutionSpec s;
    s.lambda = lambda;
    for (int i = 0; i < rank; ++i) s.pi.push_back(i);
    return build_real_form(make_model(letter, rank), s).structure();
}

}  // namespace

TEST_CASE("parameter update rule") {
    IntMat C = cartan_matrix('A', 2).entries;
    CHECK(predicted_parameters(C, {-1, -1}, {0, 1}, 1) == std::vector<int>{1, -1});
    RealStructure S = inner_structure('A', 2, {-1, -1});
    ParameterState P = initial_state(S);
    ParameterState Q = weyl_parameter_update(S, P, 1);
    CHECK(Q.lambda == predicted_parameters(C, P.lambda, P.pi, 1));
    CHECK(Q.log == std::vector<std::string>{"s2"});
}

TEST_CASE("parameter updates agree with the generators for every reflection") {
    for (auto [c, n] : small_types()) {
        for (const auto& F : forms_of(c, n)) {
            RealStructure S = F.structure();
            ParameterState P = initial_state(S);
            for (int k = 0; k < n; ++k) {
                CAPTURE(F.spec.id);
                CAPTURE(k);
                if (P.pi[k] != k) {
                    CHECK_THROWS_AS(weyl_parameter_update(S, P, k), std::invalid_argument);
                    continue;
                }
                ParameterState Q = weyl_parameter_update(S, P, k);
                CHECK(Q.lambda == predicted_parameters(P.abstract->R.cartan.entries, P.lambda, P.pi, k));
                CHECK(satisfies_generator_relations(F.model->L, P.abstract->R.cartan.entries, Q.gens));
            }
        }
    }
}

TEST_CASE("standard forms") {
    RealStructure d4 = inner_structure('D', 4, {-1, -1, 1, 1});
    ParameterState P = standard_form(d4, initial_state(d4));
    CHECK(std::count(P.lambda.begin(), P.lambda.end(), -1) == 1);
    CHECK(is_standard('D', 4, P.lambda, P.pi));

    RealStructure a2 = inner_structure('A', 2, {1, -1});
    ParameterState Q = standard_form(a2, initial_state(a2));
    CHECK(Q.lambda == std::vector<int>{-1, 1});

    RealStructure done = form("A2:inner:k1").structure();
    ParameterState R0 = initial_state(done);
    ParameterState R1 = standard_form(done, R0);
    CHECK(R1.lambda == R0.lambda);
    CHECK(R1.log.empty());

    CHECK(permitted_indices('A', 3) == std::vector<int>{1, 2});
    CHECK(permitted_indices('C', 3) == std::vector<int>{1, 3});
    CHECK(permitted_indices('G', 2) == std::vector<int>{1});
}

TEST_CASE("every sign vector reduces to its enumerated form") {
    for (auto [c, n] : std::vector<std::pair<char, int>>{{'A', 2}, {'A', 3}, {'B', 3}, {'C', 3}, {'G', 2}}) {
        auto forms = forms_of(c, n);
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::vector<int> lam(n);
            for (int i = 0; i < n; ++i) lam[i] = (mask >> i & 1) ? -1 : 1;
            RealStructure S = inner_structure(c, n, lam);
            int matches = 0;
            for (const auto& F : forms) matches += isomorphism(S, F.structure()).isomorphic;
            CAPTURE(c);
            CAPTURE(mask);
            CHECK(matches == 1);
        }
    }
}

TEST_CASE("verdict matrices are diagonal") {
    for (auto [c, n] : small_types()) {
        auto forms = forms_of(c, n);
        for (std::size_t a = 0; a < forms.size(); ++a)
            for (std::size_t b = 0; b < forms.size(); ++b) {
                CAPTURE(forms[a].spec.id);
                CAPTURE(forms[b].spec.id);
                IsomorphismResult r = isomorphism(forms[a].structure(), forms[b].structure());
                CHECK(r.isomorphic == (a == b));
                if (r.isomorphic) {
                    CHECK(r.theta_certified);
                    CHECK(r.sigma_certified);
                } else {
                    CHECK(r.reason != "");
                }
            }
    }
}

TEST_CASE("inner and outer forms are never isomorphic") {
    IsomorphismResult r = isomorphism(form("A2:outer").structure(), form("A2:inner:k1").structure());
    CHECK_FALSE(r.isomorphic);
    CHECK(r.reason.find("inner") != std::string::npos);
    CHECK_THROWS_AS(isomorphism_inner(form("A2:outer").structure(), form("A2:outer").structure()), std::invalid_argument);
    CHECK_THROWS_AS(isomorphism_outer(form("A1:inner:k1").structure(), form("A1:inner:k1").structure()), std::invalid_argument);
    CHECK_FALSE(isomorphism(form("A1:inner:compact").structure(), form("A1:inner:k1").structure()).isomorphic);
    CHECK_FALSE(isomorphism(form("B2:inner:k1").structure(), form("C2:inner:k1").structure()).isomorphic);
}

TEST_CASE("weyl-conjugated reconstructions are certified and carry orbits") {
    std::mt19937 rng(41);
    for (const char* id : {"A1:inner:k1", "A2:inner:k1", "A2:outer", "C2:inner:k2", "G2:inner:k1", "A3:outer:k2", "D4:outer:k1"}) {
        CAPTURE(id);
        RealForm F = form(id);
        LinMap g = random_weyl_automorphism(*F.model, rng);
        RealStructure S2 = conjugate_structure(F.structure(), g);
        IsomorphismResult r = isomorphism(F.structure(), S2);
        REQUIRE(r.isomorphic);
        CHECK(r.theta_certified);
        CHECK(r.sigma_certified);
        CHECK(is_homomorphism(F.model->L, F.model->L, r.psi));
        // conjugating by g maps real elements of F to real elements of S2, and psi carries representatives over
        for (const auto& rep : real_orbit_representatives(F)) {
            REQUIRE(rep.resolved());
            Vec e2 = map_orbit(r, F.structure(), S2, rep.real_cayley->e);
            CHECK(S2.sigma(e2) == e2);
            CHECK(is_ad_nilpotent(F.model->L, e2));
            Sl2Triple t2 = apply(r.psi, *rep.real_cayley);
            CHECK(S2.theta(t2.e) == neg(t2.f));
            CHECK(S2.sigma(t2.f) == t2.f);
            CHECK(S2.sigma(t2.h) == t2.h);
            // pulling back along g gives a valid representative of F again
            Sl2Triple back = apply(inverse_map(g), t2);
            CHECK(check_real_representative(F, back) == "");
        }
        CHECK(map_orbit(r, F.structure(), S2, Vec(F.model->dim(), Scalar())) == Vec(F.model->dim(), Scalar()));
        CHECK_THROWS_AS(map_orbit(r, F.structure(), S2, F.model->h(0)), std::invalid_argument);
    }
}

TEST_CASE("self-isomorphism of su(2,1) scales the generators") {
    RealStructure S = form("A2:inner:k1").structure();
    IsomorphismResult r = isomorphism(S, S);
    REQUIRE(r.isomorphic);
    for (const auto& mu : r.mu) CHECK(mu == Scalar(1));
    for (std::size_t i = 0; i < r.mu.size(); ++i) CHECK(r.images.a[i] == r.state_a.gens.a[i]);
}
