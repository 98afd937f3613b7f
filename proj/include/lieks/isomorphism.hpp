#pragma once

#include "lieks/realform.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace lieks {

// Canonical generators of a theta-stable basis of simple roots inside the ambient algebra of a real structure.
// theta(x_i) = lambda_i x_i when pi(i) = i and theta(x_i) = x_pi(i) otherwise (lambda_i = 1 there).
struct ParameterState {
    std::shared_ptr<const ChevalleyModel> abstract;  // standard model of the type; source of the generator map
    GeneratorTriple gens;                           // in the ambient algebra
    std::vector<int> lambda;
    std::vector<int> pi;
    std::vector<std::string> log;
};

// Builds the theta-stable basis from a regular element of h_{0,R}. Requires the model Cartan subalgebra to be theta-stable.
ParameterState initial_state(const RealStructure& S);
// Applies s_{alpha_k} to the generators (pi(k) = k required) and re-normalizes; throws std::invalid_argument otherwise.
ParameterState weyl_parameter_update(const RealStructure& S, const ParameterState& P, int k);
// Relabels the generators by a diagram automorphism d commuting with pi: new generator i = old generator d(i).
ParameterState diagram_move(const RealStructure& S, const ParameterState& P, const IntVec& d);
// Predicted parameters after s_{alpha_k}: lambda_j lambda_k^<alpha_j, alpha_k> on pi-fixed j, 1 elsewhere.
std::vector<int> predicted_parameters(const IntMat& cartan, const std::vector<int>& lambda, const std::vector<int>& pi, int k);

// Nontrivial diagram automorphisms of the type (0-based permutations).
std::vector<IntVec> diagram_automorphisms(char letter, int rank);
// 1-based indices k allowed as the single negative parameter of an inner standard form.
std::vector<int> permitted_indices(char letter, int rank);
bool is_standard(char letter, int rank, const std::vector<int>& lambda, const std::vector<int>& pi);
// Moves the state to standard form; the move log records every applied reflection and relabeling.
ParameterState standard_form(const RealStructure& S, const ParameterState& P);

struct IsomorphismResult {
    bool isomorphic = false;
    std::string reason;           // why not, when not isomorphic
    LinMap psi;                   // ambient of a -> ambient of b
    GeneratorTriple images;       // psi of the standard-form generators of a
    std::vector<Scalar> mu;
    ParameterState state_a, state_b;
    bool theta_certified = false;  // psi theta = theta' psi on all basis vectors
    bool sigma_certified = false;  // psi sigma = sigma' psi on all basis vectors
};

IsomorphismResult isomorphism_inner(const RealStructure& a, const RealStructure& b);
IsomorphismResult isomorphism_outer(const RealStructure& a, const RealStructure& b);
IsomorphismResult isomorphism(const RealStructure& a, const RealStructure& b);

// psi(e); throws std::invalid_argument if e is not ad-nilpotent or the result is not a real element of b.
Vec map_orbit(const IsomorphismResult& r, const RealStructure& a, const RealStructure& b, const Vec& e);

// theta' = g theta g^-1, sigma' = g sigma g^-1.
RealStructure conjugate_structure(const RealStructure& S, const LinMap& g);
// Random product of simple-reflection lifts and a rational torus scaling, as an automorphism of M.
LinMap random_weyl_automorphism(const ChevalleyModel& M, std::mt19937& rng, int length = 6);

}  // namespace lieks
