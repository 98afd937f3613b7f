#include "support.hpp"

#include <doctest.h>

using namespace lieks;
using namespace lieks::testing;

TEST_CASE("standard systems are Chevalley systems") {
    for (auto [c, n] : small_types()) {
        auto M = make_model(c, n);
        ChevalleySystem S = standard_system(M);
        CHECK(check_chevalley_system(S) == "");
        CHECK(structure_constants_symmetric(S));
        CHECK_FALSE(S.adapted);
    }
}

TEST_CASE("adapted systems of inner forms") {
    for (auto [c, n] : small_types()) {
        for (const auto& F : forms_of(c, n)) {
            if (F.spec.outer) continue;
            CAPTURE(F.spec.id);
            ConjugationData cd = conjugation_data(F);
            CHECK(check_conjugation_data(*F.model, cd) == "");
            CHECK(check_cartan_action(F, cd) == "");
            CHECK(sign_law_holds(*F.model, cd));
            ChevalleySystem S = adapt_system_inner(F);
            CHECK(S.adapted);
            CHECK(check_chevalley_system(S) == "");
            CHECK(check_adapted(S, cd, F.theta, F.sigma) == "");
        }
    }
}

TEST_CASE("adapt_system_inner rejects outer forms") {
    CHECK_THROWS(adapt_system_inner(form("A2:outer")));
    RealForm F = form("A2:outer");
    std::vector<Vec> xhat;
    for (int r = 0; r < F.model->R.size(); ++r) xhat.push_back(F.model->x(r));
    CHECK_THROWS(adapt_on_images(F.model, xhat, F.theta, F.sigma));
}

TEST_CASE("adapted systems of carriers") {
    for (auto [c, n] : small_types()) {
        for (const auto& F : forms_of(c, n)) {
            CAPTURE(F.spec.id);
            for (const auto& e : enumerate_orbits(F).entries) {
                CarrierSystem cs = carrier_adapted_system(F, e.carrier);
                CHECK(check_adapted(cs.system, cs.data, F.theta, F.sigma) == "");
                CHECK(sign_law_holds(*cs.model, cs.data));
                CHECK(is_homomorphism(cs.model->L, F.model->L, cs.embed));
                // sigma(a_i) = lambda_i b_i with lambda_i = +-1 after rescaling
                for (std::size_t i = 0; i < cs.gens.a.size(); ++i) {
                    CHECK(F.sigma(cs.gens.a[i]) == scale(cs.lambda[i], cs.gens.b[i]));
                    CHECK((cs.lambda[i] == Scalar(1) || cs.lambda[i] == Scalar(-1)));
                    // degree-one generators lie in p^c, degree-zero ones in k^c
                    CHECK(cs.lambda[i] == Scalar(cs.eps[i] == 1 ? 1 : -1));
                }
                for (const auto& k : cs.system.coeff) CHECK(k.is_rational());
            }
        }
    }
}

TEST_CASE("proportionality") {
    Vec a{Scalar(1), Scalar(2)}, b{Scalar(2), Scalar(4)}, c{Scalar(1), Scalar(3)};
    REQUIRE(proportionality(b, a));
    CHECK(*proportionality(b, a) == Scalar(2));
    CHECK_FALSE(proportionality(c, a));
}
