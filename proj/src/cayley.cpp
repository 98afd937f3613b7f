#include "lieks/cayley.hpp"

#include <atomic>
#include <set>
#include <stdexcept>
#include <thread>

namespace lieks {

namespace {

Vec half_i(const Vec& v) { return scale(Scalar::imag_unit() * Scalar(frac(1, 2)), v); }

std::vector<mpq_class> solve_defining(const CarrierAlgebra& s) {
    std::size_t r = s.cartan_matrix.size();
    QMat C(r, QVec(r));
    QVec rhs(r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) C[i][j] = s.cartan_matrix[i][j];
        rhs[i] = 2 * s.degrees[i];
    }
    auto d = solve(C, rhs, r);
    if (!d) throw std::logic_error("carrier Cartan matrix is singular");
    return *d;
}

Vec twice_defining(const CarrierAlgebra& s) { return scale(Scalar(2), s.defining); }

mpq_class rational_coeff(const Scalar& c) {
    if (!c.is_rational()) throw std::logic_error("adapted system coefficient is not rational");
    return c.rational_value();
}

bool all_real(const Vec& v) {
    for (const auto& c : v)
        if (!c.is_real()) return false;
    return true;
}

}  // namespace

Sl2Triple cayley_transform(const Sl2Triple& t) {
    if (t.kind != TripleKind::RealCayley) throw std::invalid_argument("cayley_transform: expected a real-Cayley triple");
    Scalar i = Scalar::imag_unit(), half(frac(1, 2));
    Vec ie_if = scale(i, add(t.e, t.f));
    Sl2Triple out;
    out.f = scale(half, add(ie_if, t.h));
    out.h = scale(i, sub(t.e, t.f));
    out.e = scale(half, sub(t.h, ie_if));
    out.kind = TripleKind::ComplexCayley;
    return out;
}

Sl2Triple inverse_cayley_transform(const Sl2Triple& t) {
    if (t.kind != TripleKind::ComplexCayley) throw std::invalid_argument("inverse_cayley_transform: expected a complex-Cayley triple");
    Vec d = sub(t.e, t.f);
    Sl2Triple out;
    out.f = half_i(add(d, t.h));
    out.h = add(t.e, t.f);
    out.e = half_i(sub(d, t.h));
    out.kind = TripleKind::RealCayley;
    return out;
}

PrincipalSolution principal_cayley_element(const RealForm& F, const CarrierSystem& cs, const CarrierAlgebra& s) {
    for (int e : s.degrees)
        if (e != 1) throw std::invalid_argument("principal_cayley_element: carrier is not principal");
    PrincipalSolution sol;
    sol.d = solve_defining(s);
    const LieAlgebra& L = F.model->L;
    sol.x = Vec(L.dim(), Scalar());
    for (std::size_t i = 0; i < sol.d.size(); ++i) {
        if (sgn(sol.d[i]) < 0) throw std::logic_error("principal_cayley_element: negative d");
        sol.c.push_back(Scalar::sqrt_rational(sol.d[i]));
        sol.x = add(sol.x, scale(sol.c.back(), cs.system.w[cs.model->R.simple(static_cast<int>(i))]));
    }
    if (L.bracket(sol.x, F.sigma(sol.x)) != twice_defining(s)) throw std::logic_error("principal_cayley_element: [x, sigma(x)] != h");
    return sol;
}

std::vector<std::vector<int>> cartan_components(const IntMat& c) {
    int n = static_cast<int>(c.size());
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s}, members;
        comp[s] = static_cast<int>(out.size());
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            members.push_back(a);
            for (int b = 0; b < n; ++b)
                if (comp[b] < 0 && c[a][b] != 0) {
                    comp[b] = comp[s];
                    stack.push_back(b);
                }
        }
        std::sort(members.begin(), members.end());
        out.push_back(members);
    }
    return out;
}

CayleySystem cayley_system(const CarrierSystem& cs, const CarrierAlgebra& s, const std::vector<int>& component) {
    const ChevalleyModel& M = *cs.model;
    const RootSystem& R = M.R;
    std::vector<int> comp = component;
    if (comp.empty())
        for (int i = 0; i < R.rank(); ++i) comp.push_back(i);
    std::set<int> in(comp.begin(), comp.end());
    auto in_comp = [&](int a) {
        for (int i = 0; i < R.rank(); ++i)
            if (R.roots[a][i] != 0) return in.count(i) > 0;
        return false;
    };
    CayleySystem out;
    for (int a = 0; a < R.npos; ++a)
        if (cs.root_degree[a] == 1 && in_comp(a)) out.variables.push_back(a);
    int n = static_cast<int>(out.variables.size());
    for (int p = 0; p < n; ++p) out.system.vars.push_back("T" + std::to_string(p + 1));

    std::vector<Poly> coords(M.dim(), Poly(n));
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            int b = out.variables[p], g = R.neg(out.variables[q]);
            Vec br = M.L.bracket(M.x(b), M.x(g));
            mpq_class factor = -rational_coeff(cs.system.coeff[b]) * rational_coeff(cs.system.coeff[g]);
            Monomial m(n, 0);
            m[p] += 1;
            m[q] += 1;
            for (std::size_t k = 0; k < br.size(); ++k)
                if (!br[k].is_zero()) coords[k].add_term(m, factor * br[k].rational_value());
        }
    std::vector<mpq_class> d = solve_defining(s);
    for (int i : comp) coords[M.h_index(i)].add_term(Monomial(n, 0), -d[i]);

    for (int i : comp) out.equations.push_back(M.h_index(i));
    for (int a = 0; a < R.size(); ++a)
        if (cs.root_degree[a] == 0 && in_comp(a)) out.equations.push_back(M.x_index(a));
    for (int k : out.equations) out.system.polys.push_back(coords[k]);
    return out;
}

NonprincipalSolution nonprincipal_cayley_element(const RealForm& F, const CarrierSystem& cs, const CarrierAlgebra& s) {
    const LieAlgebra& L = F.model->L;
    NonprincipalSolution sol;
    std::vector<mpq_class> d = solve_defining(s);
    Vec x(L.dim(), Scalar());
    bool ok = true;
    for (const auto& comp : cartan_components(s.cartan_matrix)) {
        CayleySystem sys = cayley_system(cs, s, comp);
        sol.systems.push_back(sys);
        Vec hc(L.dim(), Scalar());
        for (int i : comp) hc = add(hc, scale(Scalar(d[i]), cs.gens.c[i]));
        auto assemble = [&](const std::vector<Scalar>& vals) {
            Vec xc(L.dim(), Scalar());
            for (std::size_t p = 0; p < vals.size(); ++p)
                if (!vals[p].is_zero()) xc = add(xc, scale(vals[p], cs.system.w[sys.variables[p]]));
            return xc;
        };
        if (sys.variables.empty()) {
            if (!is_zero_vec(hc)) ok = false;
            continue;
        }
        StructuredSolveOptions opt;
        opt.accept = [&](const std::vector<Scalar>& vals) {
            for (const auto& v : vals)
                if (!v.is_real()) return false;
            Vec xc = assemble(vals);
            return L.bracket(xc, F.sigma(xc)) == hc;
        };
        auto found = ok ? structured_solve(sys.system, opt) : std::nullopt;
        if (!found) {
            ok = false;
            continue;
        }
        sol.values.insert(sol.values.end(), found->values.begin(), found->values.end());
        x = add(x, assemble(found->values));
    }
    if (!ok) return sol;
    if (L.bracket(x, F.sigma(x)) != twice_defining(s)) throw std::logic_error("nonprincipal_cayley_element: [x, sigma(x)] != h");
    sol.x = x;
    return sol;
}

std::string check_real_representative(const RealForm& F, const Sl2Triple& t) {
    if (t.kind != TripleKind::RealCayley) return "not tagged real-Cayley";
    std::string err = check_triple(F, t);
    if (!err.empty()) return err;
    if (is_zero_vec(t.e)) return "e = 0";
    if (!is_ad_nilpotent(F.model->L, t.e)) return "e not ad-nilpotent";
    if (!all_real(F.to_real(t.e)) || !all_real(F.to_real(t.f)) || !all_real(F.to_real(t.h)))
        return "coordinates over the real basis not real";
    return "";
}

OrbitRepresentative representative_for(const RealForm& F, const CatalogEntry& entry, const RepresentativeOptions& opt) {
    OrbitRepresentative rep;
    const CarrierAlgebra& s = entry.carrier;
    rep.homogeneous = entry.triple;
    rep.provenance = {s.type, s.graded_dims(), s.degrees, s.principal, "", entry.key};
    try {
        CarrierSystem cs = carrier_adapted_system(F, s);
        Vec h = twice_defining(s);
        std::optional<Sl2Triple> cc;
        auto from_x = [&](const Vec& x) { return Sl2Triple{F.sigma(x), h, x, TripleKind::ComplexCayley}; };
        if (s.principal) {
            cc = from_x(principal_cayley_element(F, cs, s).x);
            rep.provenance.solver = "principal";
        } else {
            if (opt.lookup) {
                auto t = opt.lookup(F, cs, s);
                if (t && t->h == h && check_triple(F, *t).empty()) {
                    cc = *t;
                    rep.provenance.solver = "database";
                }
            }
            if (!cc) {
                auto sol = nonprincipal_cayley_element(F, cs, s);
                if (sol.x) {
                    cc = from_x(*sol.x);
                    rep.provenance.solver = "groebner";
                } else {
                    for (const auto& sys : sol.systems) rep.unresolved_systems.push_back(sys.system);
                    return rep;
                }
            }
        }
        std::string err = check_triple(F, *cc);
        if (!err.empty()) throw std::logic_error("complex-Cayley triple invalid: " + err);
        Sl2Triple real = inverse_cayley_transform(*cc);
        err = check_real_representative(F, real);
        if (!err.empty()) throw std::logic_error("real-Cayley triple invalid: " + err);
        rep.complex_cayley = cc;
        rep.real_cayley = real;
    } catch (const std::exception& ex) {
        rep.error = ex.what();
        rep.provenance.solver.clear();
    }
    return rep;
}

std::vector<OrbitRepresentative> real_orbit_representatives(const RealForm& F, const OrbitCatalog& catalog,
                                                            const RepresentativeOptions& opt) {
    std::size_t n = catalog.entries.size();
    std::vector<OrbitRepresentative> out(n);
    int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(n)));
    if (jobs <= 1) {
        for (std::size_t k = 0; k < n; ++k) out[k] = representative_for(F, catalog.entries[k], opt);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < n; k = next++) out[k] = representative_for(F, catalog.entries[k], opt);
        });
    for (auto& t : pool) t.join();
    return out;
}

std::vector<OrbitRepresentative> real_orbit_representatives(const RealForm& F, const RepresentativeOptions& opt) {
    return real_orbit_representatives(F, enumerate_orbits(F), opt);
}

}  // namespace lieks
