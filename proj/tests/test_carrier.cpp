#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace lieks;
using namespace lieks::testing;

TEST_CASE("sl2 carrier pieces") {
    RealForm F = form("A1:inner:k1");
    const ChevalleyModel& M = *F.model;
    Vec e = M.x(0);
    auto n0 = normalizer_n0(F, e);
    REQUIRE(n0.size() == 1);
    CHECK(span_rank({n0[0], M.h(0)}) == 1);
    auto t = maximal_torus(F, n0);
    CHECK(t.size() == 1);
    CHECK(is_maximal_torus(F, n0, t));
    CarrierAlgebra s = carrier_of(F, e, t);
    CHECK(s.dim() == 3);
    CHECK(s.dim(-1) == 1);
    CHECK(s.dim(0) == 1);
    CHECK(s.dim(1) == 1);
    CHECK(is_principal(s));
    CHECK(s.principal);
    CHECK(check_carrier(F, s) == "");
    CHECK(general_position(F, s, e));

    CarrierAlgebra s2 = carrier_of(F, M.x(M.R.neg(0)), t);
    CHECK(s2.type == s.type);
    CHECK(s2.defining == neg(s.defining));

    CHECK_THROWS(normalizer_n0(F, Vec(M.dim(), Scalar())));
    CHECK_THROWS(normalizer_n0(F, M.h(0)));
    CHECK(maximal_torus(F, {}).empty());
}

TEST_CASE("orbit counts match signed Young diagram oracles") {
    CHECK(count_sl_real(2) == 2);
    CHECK(count_sl_real(3) == 2);
    CHECK(count_sl_real(4) == 6);
    CHECK(enumerate_orbits(form("A1:inner:k1")).entries.size() == static_cast<std::size_t>(count_sl_real(2)));
    CHECK(enumerate_orbits(form("A2:outer")).entries.size() == static_cast<std::size_t>(count_sl_real(3)));
    CHECK(enumerate_orbits(form("A3:outer:k2")).entries.size() == static_cast<std::size_t>(count_sl_real(4)));
    CHECK(enumerate_orbits(form("A4:outer")).entries.size() == static_cast<std::size_t>(count_sl_real(5)));
    CHECK(enumerate_orbits(form("A2:inner:k1")).entries.size() == static_cast<std::size_t>(count_su(2, 1)));
    CHECK(enumerate_orbits(form("A3:inner:k1")).entries.size() == static_cast<std::size_t>(count_su(3, 1)));
    CHECK(enumerate_orbits(form("A3:inner:k2")).entries.size() == static_cast<std::size_t>(count_su(2, 2)));
    CHECK(enumerate_orbits(form("A4:inner:k2")).entries.size() == static_cast<std::size_t>(count_su(3, 2)));
    CHECK(enumerate_orbits(form("C2:inner:k2")).entries.size() == static_cast<std::size_t>(count_sp_real(2)));
    CHECK(enumerate_orbits(form("C3:inner:k3")).entries.size() == static_cast<std::size_t>(count_sp_real(3)));
    // split G2: five nonzero nilpotent orbits in the classification of real nilpotent orbits of G2
    CHECK(enumerate_orbits(form("G2:inner:k1")).entries.size() == 5);
}

TEST_CASE("compact forms have no nilpotent orbits") {
    for (auto [c, n] : small_types()) CHECK(enumerate_orbits(forms_of(c, n)[0]).entries.empty());
}

TEST_CASE("catalog entries are valid carriers with homogeneous triples") {
    for (auto [c, n] : small_types()) {
        if (n > 3) continue;
        for (const auto& F : forms_of(c, n)) {
            CAPTURE(F.spec.id);
            OrbitCatalog cat = enumerate_orbits(F);
            std::set<std::string> keys;
            for (const auto& e : cat.entries) {
                CHECK(check_carrier(F, e.carrier) == "");
                CHECK(check_triple(F, e.triple) == "");
                CHECK(e.triple.kind == TripleKind::Homogeneous);
                CHECK(is_principal(e.carrier) == e.carrier.principal);
                CHECK(keys.insert(e.key).second);
                // h = 2 * defining
                CHECK(e.triple.h == scale(Scalar(2), e.carrier.defining));
                CHECK(general_position(F, e.carrier, e.triple.e));
            }
        }
    }
}

TEST_CASE("complete_triple") {
    RealForm F = form("A1:inner:k1");
    const ChevalleyModel& M = *F.model;
    auto f = complete_triple(F, M.h(0), M.x(0));
    REQUIRE(f);
    CHECK(M.L.bracket(M.x(0), *f) == M.h(0));
}
