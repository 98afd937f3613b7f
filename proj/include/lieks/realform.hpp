#pragma once

#include "lieks/rootsystem.hpp"

#include <memory>
#include <string>
#include <vector>

namespace lieks {

struct InvolutionSpec {
    bool outer = false;
    IntVec lambda;  // +-1 per simple root
    IntVec pi;      // 0-based involutive permutation; identity for inner
    std::string id;     // descriptor, e.g. "A2:inner:k1"
    std::string label;  // classical name tag; a label only
};

// theta (linear) and sigma (antilinear) on a complex model.
struct RealStructure {
    std::shared_ptr<const ChevalleyModel> model;
    LinMap theta, sigma;
    bool outer = false;
};

struct WeightVector {
    QVec vec;      // over the model basis
    IntVec weight; // values on the h0^c frame
    int parity;    // 0: in k^c, 1: in p^c
    int root;      // alpha with vec = x_alpha, u_alpha or v_alpha
    char tag;      // 'x', 'u' or 'v'
};

struct WeightDecomposition {
    std::vector<QVec> frame;   // basis of h0^c
    std::vector<QVec> p_zero;  // zero-weight part of p^c
    std::vector<WeightVector> vectors;
};

class RealForm {
public:
    std::shared_ptr<const ChevalleyModel> model;  // for outer non-A_{2m}: the phi-equivariant basis
    InvolutionSpec spec;
    LinMap theta, sigma;
    std::vector<Vec> K, P;
    std::vector<std::string> K_names, P_names;
    std::size_t h0_count = 0;  // K[0..h0_count) or the trailing ih_i span h_0
    LieAlgebra table;          // over B = K u P
    Mat B_inverse;             // model coordinates -> B coordinates
    std::vector<int> psi_plus;  // outer type
    std::vector<int> reps;      // the representative set I (outer type)
    Signature killing;

    std::size_t dim() const { return K.size() + P.size(); }
    std::size_t dim_k() const { return K.size(); }
    std::size_t dim_p() const { return P.size(); }
    bool compact() const { return P.empty(); }
    RealStructure structure() const { return {model, theta, sigma, spec.outer}; }
    std::vector<Vec> basis() const;  // K then P
    std::vector<Vec> h0_basis() const;
    // Coordinates over B (real iff the vector lies in the real form).
    Vec to_real(const Vec& v) const;
    Vec from_real(const Vec& c) const;
    // phi on the model (outer type); identity for inner type.
    LinMap phi;
    IntVec root_lambda;  // chi-eigenvalue per root
};

RealForm build_real_form(std::shared_ptr<const ChevalleyModel> M, const InvolutionSpec& S);
RealForm compact_form(std::shared_ptr<const ChevalleyModel> M);
std::vector<InvolutionSpec> enumerate_involutions(char letter, int rank);
// Diagram involution used for outer forms, 0-based; identity if none.
IntVec standard_diagram_involution(char letter, int rank);
WeightDecomposition weight_space_decomposition(const RealForm& F);

// tau: x_alpha -> -x_{-alpha}, h -> -h, antilinear.
LinMap compact_conjugation(const ChevalleyModel& M);
// Diagonal inner automorphism x_alpha -> lambda^alpha x_alpha.
LinMap inner_diagonal(const ChevalleyModel& M, const IntVec& lambda);
// Diagram automorphism (h_i,x_i,y_i) -> (h_pi(i),x_pi(i),y_pi(i)).
LinMap diagram_automorphism(const ChevalleyModel& M, const IntVec& pi);
IntVec root_signs(const RootSystem& R, const IntVec& lambda);

// Checks the RealForm invariants (grading, real table, Killing definiteness,
// sigma^2 = theta^2 = id, sigma theta = theta sigma). Returns a description of the first failure or "".
std::string check_real_form(const RealForm& F);

}  // namespace lieks
