#include "support.hpp"

#include <doctest.h>

using namespace lieks;
using namespace lieks::testing;

TEST_CASE("cayley transform on sl2(R)") {
    RealForm F = form("A1:inner:k1");
    auto reps = real_orbit_representatives(F);
    REQUIRE(reps.size() == 2);
    for (const auto& r : reps) {
        REQUIRE(r.resolved());
        const Sl2Triple& t = *r.real_cayley;
        CHECK(check_real_representative(F, t) == "");
        Sl2Triple c = cayley_transform(t);
        CHECK(c.kind == TripleKind::ComplexCayley);
        CHECK(check_triple(F, c) == "");
        CHECK(F.sigma(c.e) == c.f);
        CHECK(triples_equal(inverse_cayley_transform(c), t));
        CHECK(triples_equal(c, *r.complex_cayley));
    }
    // the two representatives are not real multiples of each other
    auto a = F.to_real(reps[0].real_cayley->e), b = F.to_real(reps[1].real_cayley->e);
    auto ratio = proportionality(a, b);
    CHECK((!ratio || ratio->sign() < 0));
}

TEST_CASE("cayley transforms reject the wrong kind") {
    Sl2Triple t;
    t.kind = TripleKind::Homogeneous;
    CHECK_THROWS_AS(cayley_transform(t), std::invalid_argument);
    CHECK_THROWS_AS(inverse_cayley_transform(t), std::invalid_argument);
}

TEST_CASE("cayley round trip on randomized real triples") {
    std::mt19937 rng(29);
    std::uniform_int_distribution<int> small(-2, 2);
    const Gauss zs[] = {Gauss(frac(3, 5), frac(4, 5)), Gauss(frac(5, 13), frac(-12, 13)), Gauss(0, 1), Gauss(frac(-8, 17), frac(15, 17))};
    int checked = 0;
    for (const char* id : {"A1:inner:k1", "A2:inner:k1", "C2:inner:k2", "G2:inner:k1", "B2:inner:k1", "A3:inner:k2"}) {
        RealForm F = form(id);
        for (const auto& r : real_orbit_representatives(F)) {
            REQUIRE(r.resolved());
            for (int t = 0; t < 4; ++t) {
                std::vector<int> vals;
                for (int i = 0; i < F.model->rank(); ++i) vals.push_back(small(rng));
                LinMap g = torus_automorphism(*F.model, zs[t], vals);
                Sl2Triple u = apply(g, *r.real_cayley);
                if (t % 2) u = swap_triple(u);
                CAPTURE(id);
                REQUIRE(check_real_representative(F, u) == "");
                Sl2Triple c = cayley_transform(u);
                CHECK(check_triple(F, c) == "");
                CHECK(triples_equal(inverse_cayley_transform(c), u));
                CHECK(triples_equal(cayley_transform(inverse_cayley_transform(c)), c));
                ++checked;
            }
        }
    }
    CHECK(checked >= 100);
}

TEST_CASE("principal solutions are rational and nonnegative") {
    for (auto [c, n] : small_types()) {
        for (const auto& F : forms_of(c, n)) {
            for (const auto& e : enumerate_orbits(F).entries) {
                if (!e.carrier.principal) continue;
                CarrierSystem cs = carrier_adapted_system(F, e.carrier);
                PrincipalSolution sol = principal_cayley_element(F, cs, e.carrier);
                for (const auto& d : sol.d) CHECK(sgn(d) >= 0);
                CHECK(F.model->L.bracket(sol.x, F.sigma(sol.x)) == scale(Scalar(2), e.carrier.defining));
            }
        }
    }
}

TEST_CASE("principal solver rejects non-principal carriers") {
    RealForm F = form("G2:inner:k1");
    for (const auto& e : enumerate_orbits(F).entries) {
        if (e.carrier.principal) continue;
        CarrierSystem cs = carrier_adapted_system(F, e.carrier);
        CHECK_THROWS_AS(principal_cayley_element(F, cs, e.carrier), std::invalid_argument);
        auto sys = cayley_system(cs, e.carrier, {});
        CHECK(sys.system.nvars() > 0);
        auto sol = nonprincipal_cayley_element(F, cs, e.carrier);
        REQUIRE(sol.x);
        CHECK(F.model->L.bracket(*sol.x, F.sigma(*sol.x)) == scale(Scalar(2), e.carrier.defining));
    }
}

TEST_CASE("representatives for every form through rank four") {
    for (auto [c, n] : small_types()) {
        for (const auto& F : forms_of(c, n)) {
            CAPTURE(F.spec.id);
            OrbitCatalog cat = enumerate_orbits(F);
            auto reps = real_orbit_representatives(F, cat);
            CHECK(reps.size() == cat.entries.size());
            for (const auto& r : reps) {
                CHECK(r.error == "");
                REQUIRE(r.resolved());
                CHECK(check_real_representative(F, *r.real_cayley) == "");
                CHECK(check_triple(F, *r.complex_cayley) == "");
                CHECK(F.sigma(r.complex_cayley->e) == r.complex_cayley->f);
                CHECK(r.complex_cayley->h == r.homogeneous.h);
                CHECK(r.provenance.solver == (r.provenance.principal ? "principal" : "groebner"));
            }
        }
    }
}

TEST_CASE("small representative counts") {
    CHECK(real_orbit_representatives(form("A1:inner:k1")).size() == 2);
    CHECK(real_orbit_representatives(form("A2:outer")).size() == 2);
    // su(2,1): three nonzero nilpotent orbits (signed Young diagrams of signature (2,1))
    CHECK(real_orbit_representatives(form("A2:inner:k1")).size() == static_cast<std::size_t>(count_su(2, 1)));
    CHECK(count_su(2, 1) == 3);
}

TEST_CASE("parallel runs give identical output") {
    RealForm F = form("C3:inner:k3");
    OrbitCatalog cat = enumerate_orbits(F);
    auto a = real_orbit_representatives(F, cat, {nullptr, 1});
    auto b = real_orbit_representatives(F, cat, {nullptr, 4});
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        REQUIRE(a[k].resolved());
        REQUIRE(b[k].resolved());
        CHECK(triples_equal(*a[k].real_cayley, *b[k].real_cayley));
    }
}
