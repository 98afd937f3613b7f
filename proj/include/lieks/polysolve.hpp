#pragma once

#include "lieks/exact.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lieks {

using Monomial = std::vector<int>;  // exponent per variable

enum class MonomialOrder { Lex, GrLex };

// Polynomial with rational coefficients; variables indexed 0..nvars-1, T_0 largest under Lex.
struct Poly {
    int nvars = 0;
    std::map<Monomial, mpq_class> terms;  // no zero coefficients

    Poly() = default;
    explicit Poly(int n) : nvars(n) {}
    static Poly constant(int n, const mpq_class& c);
    static Poly variable(int n, int i);
    static Poly monomial(const Monomial& m, const mpq_class& c);

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const;
    int total_degree() const;
    int degree_in(int var) const;
    bool involves(int var) const;
    void add_term(const Monomial& m, const mpq_class& c);

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const mpq_class& c, const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms == b.terms; }
};

bool monomial_less(const Monomial& a, const Monomial& b, MonomialOrder o);
Monomial leading_monomial(const Poly& p, MonomialOrder o = MonomialOrder::Lex);
mpq_class leading_coefficient(const Poly& p, MonomialOrder o = MonomialOrder::Lex);
// Full reduction of p modulo G.
Poly reduce(const Poly& p, const std::vector<Poly>& G, MonomialOrder o = MonomialOrder::Lex);
Poly s_polynomial(const Poly& f, const Poly& g, MonomialOrder o = MonomialOrder::Lex);
Scalar evaluate(const Poly& p, const std::vector<Scalar>& values);

struct PolySystem {
    std::vector<std::string> vars;
    std::vector<Poly> polys;
    int nvars() const { return static_cast<int>(vars.size()); }
};

// Reduced Groebner basis, monic, sorted by descending leading monomial. {1} if inconsistent.
std::vector<Poly> groebner_basis(const PolySystem& S, MonomialOrder o = MonomialOrder::Lex);
bool solvable_over_C(const PolySystem& S);

struct StructuredSolution {
    std::vector<Scalar> values;  // one per variable of the original system
    std::vector<int> kept;       // variables not forced to zero
    std::vector<Poly> basis;     // Groebner basis of the restricted system that was solved
};

struct StructuredSolveOptions {
    // Extra condition on a candidate (already verified against S); rejected candidates continue the search.
    std::function<bool(const std::vector<Scalar>&)> accept;
    // Called with every restricted system before it is examined.
    std::function<void(const PolySystem&)> on_restriction;
    // Largest number of kept variables; -1 for all.
    int max_kept = -1;
    // Also back-substitute through bases outside the recognized shapes (degree <= 2 steps).
    bool lifting = true;
};

// Zero-setting search: for i = 1..n keep i variables (subsets in lexicographic order), set the rest to 0,
// and read a solution off a Groebner basis of recognized shape (T^2 - a, T - a, T_c - sum a_k T_k^2 - b),
// falling back to back-substitution when opt.lifting is set. nullopt means NoSolutionFound.
std::optional<StructuredSolution> structured_solve(const PolySystem& S, const StructuredSolveOptions& opt = {});

// Text grammar: poly := term (('+'|'-') term)*, term := rational ['*' var ['^' int]]...
std::string poly_to_string(const Poly& p, const std::vector<std::string>& vars);
Poly parse_poly(const std::string& s, const std::vector<std::string>& vars);
std::string system_to_string(const PolySystem& S);

}  // namespace lieks
