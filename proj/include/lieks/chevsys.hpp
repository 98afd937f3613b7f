#pragma once

#include "lieks/carrier.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lieks {

// theta(x_a) = lambda_a x_{a o theta}, sigma(x_a) = r_a x_{-(a o theta)} relative to root vectors xhat_a.
struct ConjugationData {
    std::vector<int> theta_root;  // a o theta
    std::vector<int> lambda;
    std::vector<Scalar> r;
};

ConjugationData conjugation_data(const RealForm& F);
// Same, for root vectors xhat (one per root of M) living in an ambient algebra with theta and sigma.
ConjugationData conjugation_data(const ChevalleyModel& M, const std::vector<Vec>& xhat, const LinMap& theta,
                                 const LinMap& sigma);
// Invariants: lambda symmetric, r_a r_{-a} = 1, r_{-(a o theta)} = 1/r_a.
std::string check_conjugation_data(const ChevalleyModel& M, const ConjugationData& cd);
// theta(h_a) = h_{a o theta}, sigma(h_a) = -h_{a o theta} on the model itself.
std::string check_cartan_action(const RealForm& F, const ConjugationData& cd);
// sign(r_i) = -sign(lambda_i) on the theta-fixed simple roots.
bool sign_law_holds(const ChevalleyModel& M, const ConjugationData& cd);

// w_a = coeff_a * xhat_a, with xhat the root vectors of `model` (or their images in an ambient algebra).
struct ChevalleySystem {
    std::shared_ptr<const ChevalleyModel> model;
    std::vector<Scalar> coeff;
    std::vector<Vec> w;
    bool adapted = false;
};

ChevalleySystem standard_system(std::shared_ptr<const ChevalleyModel> M);
// [w_a, w_-a] = -h_a and h -> -h, w_a -> w_-a an automorphism of the model.
std::string check_chevalley_system(const ChevalleySystem& S);
// theta(w_a) = lambda_a w_{a o theta}, sigma(w_a) = lambda_a w_{-(a o theta)} for all roots.
std::string check_adapted(const ChevalleySystem& S, const ConjugationData& cd, const LinMap& theta, const LinMap& sigma);
// M_{a,b} = M_{-a,-b}.
bool structure_constants_symmetric(const ChevalleySystem& S);

ChevalleySystem adapt_system_inner(const RealForm& F);
// Adapted system from root vectors xhat of M inside an ambient algebra where theta fixes every root.
ChevalleySystem adapt_on_images(std::shared_ptr<const ChevalleyModel> M, const std::vector<Vec>& xhat,
                                const LinMap& theta, const LinMap& sigma, ConjugationData* cd_out = nullptr);

struct CarrierSystem {
    std::shared_ptr<const ChevalleyModel> model;  // abstract model of s^c, Cartan matrix of the carrier
    GeneratorTriple gens;                          // canonical generators in the ambient model
    LinMap embed;                                  // model -> ambient
    std::vector<Scalar> lambda;                    // sigma(a_i) = lambda_i b_i
    std::vector<int> eps;                          // degrees of the simple roots
    std::vector<int> root_degree;                  // per root of `model`
    ChevalleySystem system;                        // adapted, w in ambient coordinates
    ConjugationData data;                          // relative to embed(x_a)
};

CarrierSystem carrier_adapted_system(const RealForm& F, const CarrierAlgebra& s);

// c with u = c v, if any.
std::optional<Scalar> proportionality(const Vec& u, const Vec& v);

}  // namespace lieks
