#pragma once

#include "lieks/lie.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace lieks {

using IntVec = std::vector<int>;
using IntMat = std::vector<std::vector<int>>;

// Convention: entries(i,j) = <alpha_i, alpha_j> = alpha_i(h_j).
struct CartanMatrix {
    IntMat entries;
    std::string type;  // "A2", "G2", or "A1+A1" for semisimple input
    int rank() const { return static_cast<int>(entries.size()); }
};

CartanMatrix cartan_matrix(char letter, int rank);
bool supported_type(char letter, int rank);
// Names the (semi)simple type of a Cartan matrix; throws std::invalid_argument if not of finite type.
std::string classify_cartan(const IntMat& c);
// Symmetrized integer form B with C_ij = 2 B_ij / B_jj, shortest roots of each component of norm 2.
IntMat symmetrized_form(const IntMat& c);

class RootSystem {
public:
    CartanMatrix cartan;
    IntMat form;              // (alpha_i, alpha_j)
    std::vector<IntVec> roots;  // positive roots 0..N-1, then their negatives in the same order
    int npos = 0;

    int rank() const { return cartan.rank(); }
    int size() const { return static_cast<int>(roots.size()); }
    int find(const IntVec& v) const;  // -1 if not a root
    int neg(int r) const { return r < npos ? r + npos : r - npos; }
    bool positive(int r) const { return r < npos; }
    int height(int r) const;
    int simple(int i) const { return simple_index_[i]; }
    // <beta, alpha> = beta(h_alpha) = 2 (beta, alpha) / (alpha, alpha)
    int pairing(int beta, int alpha) const;
    int pairing_vec(const IntVec& beta, const IntVec& alpha) const;
    int inner(const IntVec& a, const IntVec& b) const;
    int norm(int r) const { return inner(roots[r], roots[r]); }
    int sum(int a, int b) const;  // index of a+b or -1

    friend RootSystem build_root_system(const CartanMatrix& c);

private:
    std::map<IntVec, int> index_;
    std::vector<int> simple_index_;
};

RootSystem build_root_system(const CartanMatrix& c);

// Chevalley basis layout: x_r for positive r at index r, h_1..h_l at N..N+l-1,
// x_r for negative r at index r + l.
class ChevalleyModel {
public:
    RootSystem R;
    LieAlgebra L;

    int rank() const { return R.rank(); }
    int dim() const { return static_cast<int>(L.dim()); }
    int x_index(int r) const { return R.positive(r) ? r : r + R.rank(); }
    int h_index(int i) const { return R.npos + i; }
    // Inverse of x_index: root index, or -1 for Cartan elements.
    int root_of(int b) const;

    int N(int a, int b) const;  // structure constant, 0 if a+b not a root
    Vec x(int r) const { return unit_vec(L.dim(), x_index(r)); }
    Vec h(int i) const { return unit_vec(L.dim(), h_index(i)); }
    Vec coroot(int r) const;  // h_alpha
    // Simple index i used to build positive root r from r - alpha_i (extraspecial pair); -1 for simple roots.
    int build_index(int r) const { return build_first_[r]; }

    // Canonical generators (h_i, x_i, y_i).
    std::vector<Vec> gens_h() const;
    std::vector<Vec> gens_x() const;
    std::vector<Vec> gens_y() const;

    friend ChevalleyModel build_chevalley_model(const RootSystem& R);
    // Model with basis x'_r = s_r x_r (s_r = s_{-r} = +-1); same root system.
    friend ChevalleyModel resign_model(const ChevalleyModel& M, const std::vector<int>& s);

private:
    std::vector<int> Ntab_;  // size |Phi|^2
    std::vector<int> build_first_;
    void fill_table();
};

ChevalleyModel build_chevalley_model(const RootSystem& R);
ChevalleyModel resign_model(const ChevalleyModel& M, const std::vector<int>& s);
std::shared_ptr<const ChevalleyModel> make_model(char letter, int rank);

// Images of all basis vectors of M under the homomorphism sending the canonical
// generators to (hs, xs, ys) in the target algebra (column list, not verified).
LinMap extend_generators(const ChevalleyModel& M, const LieAlgebra& target, const std::vector<Vec>& hs,
                         const std::vector<Vec>& xs, const std::vector<Vec>& ys);

struct GeneratorTriple {
    std::vector<Vec> c, a, b;
};

// Root-space criterion plus all canonical-generator relations, against Cartan matrix C.
// Throws std::invalid_argument if a_i / b_i are not in the root spaces of alpha_i / -alpha_i of M.
bool verify_canonical_generators(const ChevalleyModel& M, const GeneratorTriple& g);
// Canonical-generator relations in an arbitrary algebra.
bool satisfies_generator_relations(const LieAlgebra& L, const IntMat& C, const GeneratorTriple& g);

// (h_{w alpha_i}, x_{w alpha_i}, x_{-w alpha_i}) for w = s_{alpha_k}, expressed in M.
GeneratorTriple simple_reflection_action(const ChevalleyModel& M, int k);
// Root indices of w(alpha_i), w = s_{alpha_k}.
std::vector<int> reflected_simple_roots(const RootSystem& R, int k);

// Killing form restricted to the Cartan span h_1..h_l.
QMat cartan_killing(const ChevalleyModel& M);

}  // namespace lieks
