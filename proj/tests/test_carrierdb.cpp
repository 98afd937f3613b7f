#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>

using namespace lieks;
using namespace lieks::testing;

namespace {

const std::vector<PipelineRecord>& records() {
    static const std::vector<PipelineRecord> r = pipeline_records();
    return r;
}

std::vector<Scalar> scalars(const std::vector<int>& v) {
    std::vector<Scalar> out;
    for (int x : v) out.push_back(Scalar(x));
    return out;
}

}  // namespace

TEST_CASE("pipeline records are valid and keyed canonically") {
    REQUIRE(records().size() == 7);
    std::set<std::string> keys;
    for (const auto& pr : records()) {
        CAPTURE(pr.form);
        CHECK(validate_record(pr.record) == "");
        keys.insert(pr.record.key());
    }
    CHECK(keys == std::set<std::string>{"C3_e011_lmpp_c112010", "D4_e0111_lmppp_c111100100100", "G2_e01_lmp_c13"});
}

TEST_CASE("text round trip is bit exact") {
    for (const auto& pr : records()) {
        std::string t = record_to_text(pr.record);
        CarrierRecord back = record_from_text(t);
        CHECK(back == pr.record);
        CHECK(record_to_text(back) == t);
    }
    CHECK_THROWS_AS(record_from_text("not a record"), CarrierDbError);
}

TEST_CASE("store, load, duplicates and invalid records") {
    TempDir dir("db");
    CarrierDb db(dir.path);
    const CarrierRecord& r = records().front().record;
    std::string key = db.store(r);
    CHECK(key == r.key());
    CHECK(db.contains(key));
    CHECK(db.load(key) == r);
    CHECK_THROWS_AS(db.store(r), CarrierDbError);
    CHECK(db.list() == std::vector<std::string>{key});

    CarrierRecord broken = records()[1].record;
    broken.triple.e = scale(Scalar(2), broken.triple.e);
    CHECK(validate_record(broken) != "");
    CHECK_THROWS_AS(db.store(broken), CarrierDbError);

    // a corrupted file is reported, not silently accepted
    {
        std::ofstream os(dir.path / (key + ".carrier"), std::ios::app);
        os << "garbage\n";
    }
    CHECK_THROWS_AS(db.load(key), CarrierDbError);
}

TEST_CASE("lookup") {
    TempDir dir("lookup");
    CarrierDb db(dir.path);
    std::set<std::string> seen;
    for (const auto& pr : records())
        if (seen.insert(pr.record.key()).second) db.store(pr.record);
    for (const auto& pr : records()) {
        const CarrierRecord& r = pr.record;
        auto hit = db.lookup(r.cartan, scalars(r.lambda), r.eps);
        REQUIRE(hit);
        CHECK(hit->key() == r.key());
        // one flipped degree: no match
        auto eps = r.eps;
        eps[0] = 1 - eps[0];
        CHECK_FALSE(db.lookup(r.cartan, scalars(r.lambda), eps));
    }
    // the C3 record queried in reversed generator order
    const CarrierRecord* c3 = nullptr;
    for (const auto& pr : records())
        if (pr.record.type == "C3") c3 = &pr.record;
    REQUIRE(c3);
    int l = 3;
    std::vector<int> p{2, 1, 0};
    IntMat C(l, std::vector<int>(l));
    std::vector<int> eps(l), lam(l);
    for (int i = 0; i < l; ++i) {
        for (int j = 0; j < l; ++j) C[i][j] = c3->cartan[p[i]][p[j]];
        eps[i] = c3->eps[p[i]];
        lam[i] = c3->lambda[p[i]];
    }
    auto hit = db.lookup(C, scalars(lam), eps);
    REQUIRE(hit);
    CHECK(hit->key() == c3->key());
}

TEST_CASE("canonical order is invariant under relabeling") {
    std::mt19937 rng(31);
    for (const auto& pr : records()) {
        const CarrierRecord& r = pr.record;
        int l = static_cast<int>(r.eps.size());
        CanonicalOrder base = canonical_order(r.cartan, r.eps, r.lambda);
        std::vector<int> p(l);
        std::iota(p.begin(), p.end(), 0);
        for (int t = 0; t < 5; ++t) {
            std::shuffle(p.begin(), p.end(), rng);
            IntMat C(l, std::vector<int>(l));
            std::vector<int> eps(l), lam(l);
            for (int i = 0; i < l; ++i) {
                for (int j = 0; j < l; ++j) C[i][j] = r.cartan[p[i]][p[j]];
                eps[i] = r.eps[p[i]];
                lam[i] = r.lambda[p[i]];
            }
            CanonicalOrder co = canonical_order(C, eps, lam);
            CHECK(co.cartan == base.cartan);
            CHECK(co.eps == base.eps);
            CHECK(co.lambda == base.lambda);
            CHECK(record_key(r.type, co) == r.key());
        }
    }
}

TEST_CASE("transfer into rescaled targets") {
    TempDir dir("transfer");
    CarrierDb db(dir.path);
    for (const char* id : {"G2:inner:k1", "C3:inner:k3"}) {
        RealForm F = form(id);
        for (const auto& e : enumerate_orbits(F).entries) {
            if (e.carrier.principal) continue;
            CAPTURE(id);
            CarrierSystem cs = carrier_adapted_system(F, e.carrier);
            OrbitRepresentative rep = representative_for(F, e);
            REQUIRE(rep.complex_cayley);
            auto recs = make_records(F, cs, e.carrier, *rep.complex_cayley);
            REQUIRE(recs.size() == 1);
            // a' = t a, b' = b / t scales lambda by t^2
            GeneratorTriple g;
            std::vector<Scalar> lam;
            for (std::size_t i = 0; i < cs.gens.a.size(); ++i) {
                Scalar t(frac(static_cast<long>(i) + 2, 3));
                g.c.push_back(cs.gens.c[i]);
                g.a.push_back(scale(t, cs.gens.a[i]));
                g.b.push_back(scale(t.inverse(), cs.gens.b[i]));
                lam.push_back(cs.lambda[i] * t * t);
            }
            TransferResult tr = transfer_triple(recs[0], F, e.carrier.cartan_matrix, g, lam, e.carrier.degrees);
            CHECK(tr.triple.kind == TripleKind::ComplexCayley);
            CHECK(check_triple(F, tr.triple) == "");
            CHECK(tr.triple.h == scale(Scalar(2), e.carrier.defining));
            CHECK(general_position(F, e.carrier, tr.triple.e));
            // mismatched degrees are rejected before mapping
            auto eps = e.carrier.degrees;
            eps[0] = 1 - eps[0];
            CHECK_THROWS_AS(transfer_triple(recs[0], F, e.carrier.cartan_matrix, g, lam, eps), CarrierDbError);
        }
    }
}

TEST_CASE("database-backed representatives") {
    TempDir dir("reps");
    CarrierDb db(dir.path);
    std::set<std::string> seen;
    for (const auto& pr : records())
        if (seen.insert(pr.record.key()).second) db.store(pr.record);
    RepresentativeOptions opt;
    opt.lookup = make_db_lookup(db);
    for (const char* id : {"G2:inner:k1", "C3:inner:k3", "D4:inner:k2"}) {
        RealForm F = form(id);
        for (const auto& r : real_orbit_representatives(F, opt)) {
            CAPTURE(id);
            REQUIRE(r.resolved());
            CHECK(check_real_representative(F, *r.real_cayley) == "");
            if (!r.provenance.principal) CHECK(r.provenance.solver == "database");
        }
    }
}

TEST_CASE("twisted records remain valid") {
    const CarrierRecord& r = records().front().record;
    CarrierRecord t = twisted_record(r, Gauss(frac(3, 5), frac(4, 5)), std::vector<int>(r.eps.size(), 1));
    CHECK(validate_record(t) == "");
    CHECK(t.key() == r.key());
    CHECK(record_from_text(record_to_text(t)) == t);
}
