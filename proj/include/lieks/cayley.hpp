#pragma once

#include "lieks/chevsys.hpp"
#include "lieks/polysolve.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lieks {

// Real-Cayley (f,h,e) -> complex-Cayley (1/2(ie+if+h), i(e-f), 1/2(-ie-if+h)). Throws on a wrong kind tag.
Sl2Triple cayley_transform(const Sl2Triple& t);
// Complex-Cayley (f,h,e) -> real-Cayley (1/2 i(e-f+h), e+f, 1/2 i(e-f-h)).
Sl2Triple inverse_cayley_transform(const Sl2Triple& t);

struct PrincipalSolution {
    std::vector<mpq_class> d;  // C d = 2
    std::vector<Scalar> c;     // sqrt(d)
    Vec x;
};

// x = sum sqrt(d_i) w_i with [x, sigma(x)] = h; throws std::invalid_argument for a non-principal carrier
// and std::logic_error if the bracket check fails.
PrincipalSolution principal_cayley_element(const RealForm& F, const CarrierSystem& cs, const CarrierAlgebra& s);

struct CayleySystem {
    PolySystem system;          // unknown T_b per degree-1 root b, one equation per s_0 coordinate
    std::vector<int> variables;  // roots of cs.model, one per variable
    std::vector<int> equations;  // basis indices of cs.model, one per equation
};

// The polynomial form of [x, sigma(x)] = h over one set of simple roots (all of them by default).
CayleySystem cayley_system(const CarrierSystem& cs, const CarrierAlgebra& s, const std::vector<int>& component = {});

struct NonprincipalSolution {
    std::optional<Vec> x;               // nullopt: NoSolutionFound
    std::vector<Scalar> values;         // per variable of `systems`, concatenated over components
    std::vector<CayleySystem> systems;  // one per simple component
};

NonprincipalSolution nonprincipal_cayley_element(const RealForm& F, const CarrierSystem& cs, const CarrierAlgebra& s);

// Simple components of a Cartan matrix as sorted index sets.
std::vector<std::vector<int>> cartan_components(const IntMat& c);

struct Provenance {
    std::string carrier_type;
    std::vector<int> graded_dims;
    std::vector<int> degrees;
    bool principal = false;
    std::string solver;  // "principal", "groebner", "database", or "" when unresolved
    std::string key;
};

struct OrbitRepresentative {
    Sl2Triple homogeneous;
    std::optional<Sl2Triple> complex_cayley;
    std::optional<Sl2Triple> real_cayley;
    Provenance provenance;
    std::vector<PolySystem> unresolved_systems;
    std::string error;
    bool resolved() const { return real_cayley.has_value(); }
};

// Returns a complex-Cayley triple for a carrier from an external store, or nullopt.
using CarrierLookup = std::function<std::optional<Sl2Triple>(const RealForm&, const CarrierSystem&, const CarrierAlgebra&)>;

struct RepresentativeOptions {
    CarrierLookup lookup;
    int jobs = 1;
};

OrbitRepresentative representative_for(const RealForm& F, const CatalogEntry& entry, const RepresentativeOptions& opt = {});
std::vector<OrbitRepresentative> real_orbit_representatives(const RealForm& F, const OrbitCatalog& catalog,
                                                            const RepresentativeOptions& opt = {});
std::vector<OrbitRepresentative> real_orbit_representatives(const RealForm& F, const RepresentativeOptions& opt = {});

// Real-Cayley suite plus ad-nilpotency of e and realness of e over the real basis. "" or the failure.
std::string check_real_representative(const RealForm& F, const Sl2Triple& t);

}  // namespace lieks
