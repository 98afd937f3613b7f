#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lieks {

struct FieldError : std::domain_error {
    using std::domain_error::domain_error;
};

// Gaussian rational a + b*i.
struct Gauss {
    mpq_class re, im;

    Gauss() : re(0), im(0) {}
    Gauss(mpq_class r) : re(std::move(r)), im(0) {}
    Gauss(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    Gauss conj() const { return {re, -im}; }
    mpq_class norm() const { return re * re + im * im; }
    Gauss inverse() const;

    friend Gauss operator+(const Gauss& a, const Gauss& b) { return {a.re + b.re, a.im + b.im}; }
    friend Gauss operator-(const Gauss& a, const Gauss& b) { return {a.re - b.re, a.im - b.im}; }
    friend Gauss operator-(const Gauss& a) { return {-a.re, -a.im}; }
    friend Gauss operator*(const Gauss& a, const Gauss& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Gauss operator/(const Gauss& a, const Gauss& b) { return a * b.inverse(); }
    friend bool operator==(const Gauss& a, const Gauss& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Gauss& a, const Gauss& b) { return !(a == b); }
    Gauss& operator+=(const Gauss& o) { return *this = *this + o; }
    Gauss& operator-=(const Gauss& o) { return *this = *this - o; }
};

inline bool is_zero(const Gauss& g) { return g.is_zero(); }
inline std::size_t complexity(const Gauss& g) { return (sgn(g.re) != 0) + (sgn(g.im) != 0); }

// An element of Q(sqrt p : p prime)(i), stored as sum of r_z * sqrt(z) over
// distinct squarefree z >= 1 with nonzero Gaussian rational r_z.
class ExactScalar {
public:
    struct Term {
        std::uint64_t z;
        Gauss c;
    };

    ExactScalar() = default;
    ExactScalar(long v);
    ExactScalar(int v) : ExactScalar(static_cast<long>(v)) {}
    ExactScalar(const mpq_class& q);
    ExactScalar(const Gauss& g);

    static ExactScalar normalize(const std::vector<std::pair<Gauss, std::uint64_t>>& raw);
    static ExactScalar sqrt_rational(const mpq_class& q);
    static ExactScalar imag_unit();
    static ExactScalar surd(std::uint64_t z);  // sqrt(z), z > 0 arbitrary
    static ExactScalar parse(const std::string& s);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;       // in Q
    bool is_gaussian() const;       // in Q(i)
    bool is_real() const;
    bool is_imaginary() const;      // real part zero
    mpq_class rational_value() const;  // requires is_rational
    Gauss gaussian_value() const;      // requires is_gaussian

    ExactScalar real_part() const;
    ExactScalar imag_part() const;  // real scalar b with x = a + i*b
    ExactScalar conj() const;       // complex conjugation

    ExactScalar inverse() const;
    // Least m such that u^m lies in the Q(i)-span of 1,u,...,u^(m-1).
    int minimal_degree() const;
    int field_degree() const;
    // Sign of a real element: -1, 0 or 1.
    int sign() const;
    double approx_re() const;
    double approx_im() const;
    std::size_t complexity() const { return terms_.size(); }

    std::string str() const;

    ExactScalar& operator+=(const ExactScalar& o);
    ExactScalar& operator-=(const ExactScalar& o);
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
    ExactScalar& operator/=(const ExactScalar& o) { return *this = *this * o.inverse(); }
    ExactScalar& operator*=(const mpq_class& q);

    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator-(const ExactScalar& a);
    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
    friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) { return a * b.inverse(); }
    friend bool operator==(const ExactScalar& a, const ExactScalar& b);
    friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }
    friend bool operator<(const ExactScalar& a, const ExactScalar& b);  // total order for containers

private:
    std::vector<Term> terms_;  // ascending z
    void add_term(std::uint64_t z, const Gauss& c);
};

using Scalar = ExactScalar;

std::uint64_t squarefree_part(std::uint64_t n, std::uint64_t* square_root_of_rest = nullptr);
bool is_squarefree(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

std::uint64_t min_cyclotomic_order(std::uint64_t k);

// coeffs[j] is the rational coefficient of zeta_n^j, j = 0..coeffs.size()-1.
ExactScalar from_cyclotomic(const std::vector<mpq_class>& coeffs, unsigned n);

inline bool is_zero(const ExactScalar& x) { return x.is_zero(); }
inline bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
inline std::size_t complexity(const ExactScalar& x) { return x.complexity(); }
inline std::size_t complexity(const mpq_class&) { return 0; }

inline mpq_class frac(long n, long d) {
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

std::string rational_str(const mpq_class& q);
mpq_class parse_rational(const std::string& s);

}  // namespace lieks
