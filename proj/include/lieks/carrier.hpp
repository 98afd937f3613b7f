#pragma once

#include "lieks/realform.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lieks {

enum class TripleKind { Homogeneous, ComplexCayley, RealCayley };
std::string kind_name(TripleKind k);

// (f, h, e) over the complex model.
struct Sl2Triple {
    Vec f, h, e;
    TripleKind kind = TripleKind::Homogeneous;
};

// Checks [h,e] = 2e, [h,f] = -2f, [e,f] = h and the kind conditions. Returns "" or the failed condition.
std::string check_triple(const RealForm& F, const Sl2Triple& t);

struct CarrierAlgebra {
    std::map<int, std::vector<Vec>> graded;  // degree k -> basis of s_k
    std::vector<Vec> cartan;                 // basis of s_0 cap h_0^c (coroots of the simple roots)
    Vec defining;                            // h/2
    // Roots of s: indices into weight_space_decomposition(F).vectors, with degree and positivity.
    std::vector<int> roots;
    std::vector<int> root_degree;
    std::vector<int> simple;           // positions in `roots`, ordered by (degree, weight lex)
    std::vector<int> negative_simple;  // positions in `roots` of the partner of each simple root
    std::vector<int> degrees;          // epsilon_i of the simple roots
    IntMat cartan_matrix;              // entries (i,j) = <gamma_i, gamma_j>
    std::string type;
    bool principal = false;
    GeneratorTriple generators;  // (k_i, a_i, b_i), [k_i,a_i] = 2a_i, [a_i,b_i] = k_i

    std::size_t dim(int k) const;
    std::size_t dim() const;
    std::vector<Vec> basis() const;
    std::vector<int> graded_dims() const;  // dims of s_{-m}..s_m
    int max_degree() const;
};

struct CatalogEntry {
    CarrierAlgebra carrier;
    Sl2Triple triple;  // homogeneous, h in h_0^c
    std::string key;
};

struct OrbitCatalog {
    std::vector<CatalogEntry> entries;
    std::size_t candidates_examined = 0;
};

// Rational bases of k^c and p^c built from the weight decomposition.
struct GradedBasis {
    WeightDecomposition W;
    std::vector<int> partner;  // weight vector of opposite weight and equal parity, or -1
    std::vector<QVec> k_basis, p_basis;
};
GradedBasis graded_basis(const RealForm& F);

std::vector<Vec> normalizer_n0(const RealForm& F, const Vec& e);
// Maximal torus of n0: n0 cap h_0^c when that is maximal, otherwise extended greedily by
// ad-semisimple elements of the centralizer.
std::vector<Vec> maximal_torus(const RealForm& F, const std::vector<Vec>& n0);
// True iff t is a maximal torus of n0 (centralizer nilpotent with semisimple part t).
bool is_maximal_torus(const RealForm& F, const std::vector<Vec>& n0, const std::vector<Vec>& t);
// Carrier s(e, t); t must lie in h_0^c and normalize the line of e.
CarrierAlgebra carrier_of(const RealForm& F, const Vec& e, const std::vector<Vec>& t);
bool is_principal(const CarrierAlgebra& s);
// Checks the carrier invariants; "" or the first failure.
std::string check_carrier(const RealForm& F, const CarrierAlgebra& s);
// rank of x -> [x, e] from s_0 to s_1 equals dim s_1.
bool general_position(const RealForm& F, const CarrierAlgebra& s, const Vec& e);
// f with [e,f] = h and [h,f] = -2f in p^c, if any.
std::optional<Vec> complete_triple(const RealForm& F, const Vec& h, const Vec& e);

OrbitCatalog enumerate_orbits(const RealForm& F);

// Frame coordinates of h in h_0^c brought to the dominant chamber of the Weyl group of k^c.
QVec dominant_characteristic(const RealForm& F, const Vec& h);

}  // namespace lieks
