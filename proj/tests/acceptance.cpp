// One PASS/FAIL line per acceptance criterion; exit status 1 if any criterion fails.
#include "support.hpp"

#include <chrono>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace lieks;
using namespace lieks::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool ok = true;
    std::ostringstream notes;
    void fail(const std::string& what) {
        if (ok) notes << what;
        ok = false;
    }
    void require(bool cond, const std::string& what) {
        if (!cond) fail(what);
    }
};

struct FormRun {
    RealForm F;
    OrbitCatalog catalog;
    std::vector<OrbitRepresentative> reps;
};

// Every form of every supported type through rank four, with catalog and representatives computed once.
const std::vector<FormRun>& all_runs() {
    static const std::vector<FormRun> runs = [] {
        std::vector<FormRun> out;
        for (auto [c, n] : small_types())
            for (auto& F : forms_of(c, n)) {
                OrbitCatalog cat = enumerate_orbits(F);
                auto reps = real_orbit_representatives(F, cat);
                out.push_back({std::move(F), std::move(cat), std::move(reps)});
            }
        return out;
    }();
    return runs;
}

const FormRun& run_of(const std::string& id) {
    for (const auto& r : all_runs())
        if (r.F.spec.id == id) return r;
    throw std::logic_error("no form " + id);
}

// Real-Cayley conditions against an arbitrary (theta, sigma) pair on the model.
std::string check_real_in(const RealStructure& S, const Sl2Triple& t) {
    const LieAlgebra& L = S.model->L;
    if (L.bracket(t.h, t.e) != scale(Scalar(2), t.e)) return "[h,e] != 2e";
    if (L.bracket(t.h, t.f) != scale(Scalar(-2), t.f)) return "[h,f] != -2f";
    if (L.bracket(t.e, t.f) != t.h) return "[e,f] != h";
    if (S.theta(t.e) != neg(t.f)) return "theta(e) != -f";
    if (S.sigma(t.e) != t.e || S.sigma(t.f) != t.f || S.sigma(t.h) != t.h) return "component not sigma-fixed";
    if (!is_ad_nilpotent(L, t.e)) return "e not ad-nilpotent";
    return "";
}

Outcome criterion1() {
    Outcome o;
    const std::pair<const char*, int> cases[] = {{"A1:inner:k1", 2}, {"A2:outer", 2}, {"A3:outer:k2", 4}};
    for (auto [id, n] : cases) {
        auto t0 = Clock::now();
        RealForm F = form(id);
        auto reps = real_orbit_representatives(F);
        double dt = seconds_since(t0);
        int expected = count_sl_real(n);
        std::size_t resolved = 0;
        for (const auto& r : reps) resolved += r.resolved();
        o.notes << (o.notes.tellp() > 0 ? ", " : "") << F.spec.label << " " << resolved << "/" << expected << " in "
                << static_cast<int>(dt * 1000) << " ms";
        if (static_cast<int>(resolved) != expected || reps.size() != resolved || dt > 300) o.ok = false;
    }
    if (count_sl_real(2) != 2 || count_sl_real(3) != 2 || count_sl_real(4) != 6) o.fail("; partition oracle disagrees");
    return o;
}

Outcome criterion2() {
    Outcome o;
    int forms = 0;
    for (const char* letter_rank : {"A1", "A2", "C2", "G2"}) {
        auto all = forms_of(letter_rank[0], letter_rank[1] - '0');
        for (const auto& F : all) {
            const FormRun& r = run_of(F.spec.id);
            std::size_t resolved = 0;
            for (const auto& rep : r.reps) resolved += rep.resolved();
            o.require(resolved == r.catalog.entries.size() && r.reps.size() == r.catalog.entries.size(),
                      F.spec.id + " count mismatch");
            ++forms;
        }
    }
    if (o.ok) o.notes << forms << " forms, counts equal catalog sizes";
    return o;
}

Outcome criterion3() {
    Outcome o;
    int n = 0;
    for (const auto& r : all_runs())
        for (const auto& rep : r.reps) {
            if (!rep.resolved()) {
                o.fail(r.F.spec.id + " unresolved");
                continue;
            }
            std::string err = check_real_representative(r.F, *rep.real_cayley);
            if (err.empty()) err = check_real_in(r.F.structure(), *rep.real_cayley);
            o.require(err.empty(), r.F.spec.id + ": " + err);
            ++n;
        }
    if (o.ok) o.notes << n << " representatives over " << all_runs().size() << " forms";
    return o;
}

Outcome criterion4() {
    Outcome o;
    int mids = 0;
    for (const auto& r : all_runs())
        for (const auto& rep : r.reps) {
            if (!rep.complex_cayley) {
                o.fail(r.F.spec.id + " missing complex-Cayley triple");
                continue;
            }
            o.require(check_triple(r.F, rep.homogeneous) == "", r.F.spec.id + " homogeneous triple invalid");
            o.require(check_triple(r.F, *rep.complex_cayley) == "", r.F.spec.id + " complex-Cayley triple invalid");
            o.require(r.F.sigma(rep.complex_cayley->e) == rep.complex_cayley->f, r.F.spec.id + " sigma(e') != f'");
            ++mids;
        }
    std::mt19937 rng(4);
    std::uniform_int_distribution<int> small(-2, 2);
    const Gauss zs[] = {Gauss(frac(3, 5), frac(4, 5)), Gauss(frac(5, 13), frac(-12, 13)), Gauss(frac(-8, 17), frac(15, 17))};
    int trips = 0;
    for (const char* id : {"A1:inner:k1", "A2:inner:k1", "A2:outer", "B2:inner:k1", "C2:inner:k2", "G2:inner:k1", "A3:inner:k2",
                           "B3:inner:k2"}) {
        const FormRun& r = run_of(id);
        if (r.F.spec.outer) continue;  // torus twists below commute with theta and sigma only for inner forms
        for (const auto& rep : r.reps) {
            for (int t = 0; t < 3 && trips < 100; ++t) {
                std::vector<int> vals;
                for (int i = 0; i < r.F.model->rank(); ++i) vals.push_back(small(rng));
                Sl2Triple u = apply(torus_automorphism(*r.F.model, zs[t], vals), *rep.real_cayley);
                if (t == 1) u = swap_triple(u);
                if (check_real_representative(r.F, u) != "") {
                    o.fail(std::string(id) + " generated an invalid triple");
                    continue;
                }
                Sl2Triple c = cayley_transform(u);
                o.require(check_triple(r.F, c) == "", std::string(id) + " transform invalid");
                o.require(triples_equal(inverse_cayley_transform(c), u), std::string(id) + " round trip not identity");
                ++trips;
            }
        }
    }
    o.require(trips == 100, "only " + std::to_string(trips) + " round trips generated");
    if (o.ok) o.notes << mids << " intermediate triples, " << trips << " exact round trips";
    return o;
}

Outcome criterion5() {
    Outcome o;
    int n = 0;
    for (const auto& r : all_runs())
        for (const auto& e : r.catalog.entries) {
            if (!e.carrier.principal) continue;
            CarrierSystem cs = carrier_adapted_system(r.F, e.carrier);
            PrincipalSolution sol = principal_cayley_element(r.F, cs, e.carrier);
            for (const auto& d : sol.d) o.require(sgn(d) >= 0, r.F.spec.id + " negative d");
            o.require(r.F.model->L.bracket(sol.x, r.F.sigma(sol.x)) == scale(Scalar(2), e.carrier.defining),
                      r.F.spec.id + " bracket fails");
            ++n;
        }
    if (o.ok) o.notes << n << " principal carriers";
    return o;
}

Outcome criterion6() {
    Outcome o;
    int forms = 0, carriers = 0;
    for (const auto& r : all_runs()) {
        if (r.F.spec.outer || r.F.model->rank() > 3) continue;
        ConjugationData cd = conjugation_data(r.F);
        ChevalleySystem S = adapt_system_inner(r.F);
        o.require(check_adapted(S, cd, r.F.theta, r.F.sigma) == "", r.F.spec.id + " adapted system fails");
        o.require(sign_law_holds(*r.F.model, cd), r.F.spec.id + " sign law fails");
        ++forms;
        for (const auto& e : r.catalog.entries) {
            if (e.carrier.cartan_matrix.size() > 2) continue;
            CarrierSystem cs = carrier_adapted_system(r.F, e.carrier);
            o.require(check_adapted(cs.system, cs.data, r.F.theta, r.F.sigma) == "", r.F.spec.id + " carrier system fails");
            o.require(sign_law_holds(*cs.model, cs.data), r.F.spec.id + " carrier sign law fails");
            ++carriers;
        }
    }
    if (o.ok) o.notes << forms << " inner forms, " << carriers << " carriers";
    return o;
}

Outcome criterion7() {
    Outcome o;
    auto t0 = Clock::now();
    std::mt19937 rng(7);
    int inverses = 0;
    while (inverses < 1000) {
        Scalar u = random_scalar(rng, 4, 100);
        if (u.is_zero()) continue;
        o.require(u * u.inverse() == Scalar(1), "u * inverse(u) != 1 for " + u.str());
        ++inverses;
    }
    const auto& pool = small_squarefree();
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> count(1, 4);
    for (int t = 0; t < 50; ++t) {
        std::set<std::uint64_t> ks;
        int n = count(rng);
        while (static_cast<int>(ks.size()) < n) ks.insert(pool[pick(rng)]);
        Scalar u(random_rational(rng));
        for (auto k : ks) u += Scalar(random_nonzero_rational(rng)) * Scalar::surd(k);
        int expected = 1 << surd_rank({ks.begin(), ks.end()});
        o.require(u.field_degree() == expected, "field_degree of " + u.str());
        o.require(u.minimal_degree() == expected, "minimal_degree of " + u.str());
    }
    for (std::uint64_t k = 1; k <= 30; ++k)
        if (is_squarefree(k)) o.require(min_cyclotomic_order(k) == quadratic_conductor(k), "cyclotomic order of " + std::to_string(k));
    double dt = seconds_since(t0);
    o.require(dt < 60, "took longer than 60 s");
    if (o.ok) o.notes << "1000 inverses, 50 surd sums, k <= 30 in " << static_cast<int>(dt * 1000) << " ms";
    return o;
}

Outcome criterion8() {
    Outcome o;
    int solved = 0;
    for (const auto& c : polynomial_corpus()) {
        PolySystem S = corpus_system(c);
        bool oracle = oracle_verdict(c);
        o.require(oracle == c.solvable, c.name + ": oracle disagrees with the recorded verdict");
        o.require(solvable_over_C(S) == oracle, c.name + ": solvable_over_C disagrees with the oracle");
        if (auto sol = structured_solve(S)) {
            for (const auto& p : S.polys) o.require(evaluate(p, sol->values).is_zero(), c.name + ": solution does not resubstitute");
            ++solved;
        }
    }
    if (o.ok) o.notes << polynomial_corpus().size() << " systems, " << solved << " structured solutions resubstituted";
    return o;
}

Outcome criterion9() {
    Outcome o;
    for (const char* t : {"A1", "A2", "C2", "G2"}) {
        auto forms = forms_of(t[0], t[1] - '0');
        for (std::size_t a = 0; a < forms.size(); ++a)
            for (std::size_t b = 0; b < forms.size(); ++b) {
                IsomorphismResult r = isomorphism(forms[a].structure(), forms[b].structure());
                o.require(r.isomorphic == (a == b), forms[a].spec.id + " vs " + forms[b].spec.id);
                if (r.isomorphic) o.require(r.theta_certified && r.sigma_certified, forms[a].spec.id + " not certified");
            }
    }
    std::mt19937 rng(9);
    int mapped = 0;
    for (const char* id : {"A2:inner:k1", "A2:outer", "C2:inner:k2", "G2:inner:k1", "B3:inner:k2"}) {
        const FormRun& fr = run_of(id);
        RealStructure S = fr.F.structure();
        RealStructure S2 = conjugate_structure(S, random_weyl_automorphism(*fr.F.model, rng));
        IsomorphismResult r = isomorphism(S, S2);
        if (!r.isomorphic || !r.theta_certified || !r.sigma_certified) {
            o.fail(std::string(id) + " reconstruction not certified: " + r.reason);
            continue;
        }
        for (const auto& rep : fr.reps) {
            Sl2Triple t = apply(r.psi, *rep.real_cayley);
            o.require(map_orbit(r, S, S2, rep.real_cayley->e) == t.e, std::string(id) + " map_orbit mismatch");
            std::string err = check_real_in(S2, t);
            o.require(err.empty(), std::string(id) + " mapped representative: " + err);
            ++mapped;
        }
    }
    if (o.ok) o.notes << "4 diagonal matrices, 5 certified reconstructions, " << mapped << " mapped representatives";
    return o;
}

Outcome criterion10() {
    Outcome o;
    std::vector<CarrierRecord> recs;
    for (const auto& pr : pipeline_records()) recs.push_back(pr.record);
    const Gauss zs[] = {Gauss(frac(3, 5), frac(4, 5)), Gauss(frac(5, 13), frac(12, 13)), Gauss(frac(8, 17), frac(-15, 17))};
    for (std::size_t k = 0; recs.size() < 10; ++k) {
        const CarrierRecord& base = recs[k];
        std::vector<int> vals(base.eps.size());
        for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = static_cast<int>((i + k) % 3) - 1;
        recs.push_back(twisted_record(base, zs[k % 3], vals));
    }
    for (const auto& r : recs) {
        TempDir dir("accept");
        CarrierDb db(dir.path);
        std::string key = db.store(r);
        CarrierRecord back = db.load(key);
        o.require(back == r && record_to_text(back) == record_to_text(r), key + " round trip differs");
    }
    int transfers = 0;
    for (const char* id : {"G2:inner:k1", "C3:inner:k3", "D4:inner:k2"}) {
        const FormRun& fr = run_of(id);
        for (const auto& e : fr.catalog.entries) {
            if (e.carrier.principal) continue;
            CarrierSystem cs = carrier_adapted_system(fr.F, e.carrier);
            OrbitRepresentative rep = representative_for(fr.F, e);
            for (const auto& rec : make_records(fr.F, cs, e.carrier, *rep.complex_cayley)) {
                GeneratorTriple g;
                std::vector<Scalar> lam;
                for (std::size_t i = 0; i < cs.gens.a.size(); ++i) {
                    Scalar t(frac(static_cast<long>(i) + 2, 3));
                    g.c.push_back(cs.gens.c[i]);
                    g.a.push_back(scale(t, cs.gens.a[i]));
                    g.b.push_back(scale(t.inverse(), cs.gens.b[i]));
                    lam.push_back(cs.lambda[i] * t * t);
                }
                TransferResult tr = transfer_triple(rec, fr.F, e.carrier.cartan_matrix, g, lam, e.carrier.degrees);
                o.require(tr.triple.kind == TripleKind::ComplexCayley && check_triple(fr.F, tr.triple) == "",
                          std::string(id) + " transferred triple invalid");
                o.require(general_position(fr.F, e.carrier, tr.triple.e), std::string(id) + " not in general position");
                ++transfers;
            }
        }
    }
    if (o.ok) o.notes << recs.size() << " records round-tripped, " << transfers << " transfers validated";
    return o;
}

}  // namespace

int main() {
    const std::pair<const char*, Outcome (*)()> criteria[] = {
        {"real split orbit counts", criterion1},
        {"representatives match catalog sizes", criterion2},
        {"representative triples are valid", criterion3},
        {"intermediate triples and transform round trips", criterion4},
        {"principal solutions", criterion5},
        {"adapted Chevalley systems", criterion6},
        {"exact field", criterion7},
        {"polynomial corpus", criterion8},
        {"isomorphism engine", criterion9},
        {"carrier database", criterion10},
    };
    int failures = 0;
    for (std::size_t k = 0; k < std::size(criteria); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& ex) {
            o.ok = false;
            o.notes << "exception: " << ex.what();
        }
        failures += !o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << k + 1 << ": " << criteria[k].first << " (" << o.notes.str()
                  << ")" << std::endl;
    }
    return failures ? 1 : 0;
}
