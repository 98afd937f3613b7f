#include "lieks/exact.hpp"
#include "lieks/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>

namespace lieks {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    if (p >> 63) throw FieldError("radicand overflow");
    return static_cast<std::uint64_t>(p);
}

}  // namespace

Gauss Gauss::inverse() const {
    mpq_class n = norm();
    if (sgn(n) == 0) throw FieldError("division by zero");
    return {re / n, -im / n};
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        ps.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

std::uint64_t squarefree_part(std::uint64_t n, std::uint64_t* root) {
    if (n == 0) throw FieldError("squarefree_part of 0");
    std::uint64_t k = 1, s = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (int j = 0; j < e / 2; ++j) s *= p;
        if (e % 2) k *= p;
    }
    k *= n;
    if (root) *root = s;
    return k;
}

bool is_squarefree(std::uint64_t n) { return n > 0 && squarefree_part(n) == n; }

std::string rational_str(const mpq_class& q) { return q.get_str(); }

mpq_class parse_rational(const std::string& s) {
    if (s.empty()) throw FieldError("empty rational");
    std::size_t i = (s[0] == '-') ? 1 : 0;
    bool slash = false, digit = false;
    for (; i < s.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            digit = true;
        } else if (s[i] == '/' && !slash && digit) {
            slash = true;
            digit = false;
        } else {
            throw FieldError("bad rational: " + s);
        }
    }
    if (!digit) throw FieldError("bad rational: " + s);
    mpq_class q(s);
    if (sgn(q.get_den()) == 0) throw FieldError("zero denominator: " + s);
    q.canonicalize();
    return q;
}

ExactScalar::ExactScalar(long v) {
    if (v != 0) terms_.push_back({1, Gauss(mpq_class(v))});
}

ExactScalar::ExactScalar(const mpq_class& q) {
    if (sgn(q) != 0) terms_.push_back({1, Gauss(q)});
}

ExactScalar::ExactScalar(const Gauss& g) {
    if (!g.is_zero()) terms_.push_back({1, g});
}

void ExactScalar::add_term(std::uint64_t z, const Gauss& c) {
    if (c.is_zero()) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), z,
                               [](const Term& t, std::uint64_t v) { return t.z < v; });
    if (it != terms_.end() && it->z == z) {
        it->c = it->c + c;
        if (it->c.is_zero()) terms_.erase(it);
    } else {
        terms_.insert(it, Term{z, c});
    }
}

ExactScalar ExactScalar::normalize(const std::vector<std::pair<Gauss, std::uint64_t>>& raw) {
    ExactScalar r;
    for (const auto& [c, z] : raw) {
        if (z == 0) throw FieldError("non-positive radicand");
        std::uint64_t s = 1;
        std::uint64_t k = squarefree_part(z, &s);
        r.add_term(k, c * Gauss(mpq_class(static_cast<unsigned long>(s))));
    }
    return r;
}

ExactScalar ExactScalar::surd(std::uint64_t z) { return normalize({{Gauss(mpq_class(1)), z}}); }

ExactScalar ExactScalar::imag_unit() { return ExactScalar(Gauss(mpq_class(0), mpq_class(1))); }

ExactScalar ExactScalar::sqrt_rational(const mpq_class& q) {
    if (sgn(q) == 0) return {};
    mpz_class a = abs(q.get_num()), b = q.get_den();
    mpz_class ab = a * b;
    if (!ab.fits_ulong_p()) throw FieldError("sqrt_rational: radicand too large");
    ExactScalar r = surd(ab.get_ui());
    r *= mpq_class(1, 1) / mpq_class(b);
    if (sgn(q) < 0) r = r * imag_unit();
    return r;
}

bool ExactScalar::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].z == 1 && sgn(terms_[0].c.im) == 0);
}

bool ExactScalar::is_gaussian() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].z == 1); }

bool ExactScalar::is_real() const {
    for (const auto& t : terms_)
        if (sgn(t.c.im) != 0) return false;
    return true;
}

bool ExactScalar::is_imaginary() const {
    for (const auto& t : terms_)
        if (sgn(t.c.re) != 0) return false;
    return true;
}

mpq_class ExactScalar::rational_value() const {
    if (!is_rational()) throw FieldError("not rational: " + str());
    return terms_.empty() ? mpq_class(0) : terms_[0].c.re;
}

Gauss ExactScalar::gaussian_value() const {
    if (!is_gaussian()) throw FieldError("not in Q(i): " + str());
    return terms_.empty() ? Gauss() : terms_[0].c;
}

ExactScalar ExactScalar::real_part() const {
    ExactScalar r;
    for (const auto& t : terms_)
        if (sgn(t.c.re) != 0) r.terms_.push_back({t.z, Gauss(t.c.re)});
    return r;
}

ExactScalar ExactScalar::imag_part() const {
    ExactScalar r;
    for (const auto& t : terms_)
        if (sgn(t.c.im) != 0) r.terms_.push_back({t.z, Gauss(t.c.im)});
    return r;
}

ExactScalar ExactScalar::conj() const {
    ExactScalar r = *this;
    for (auto& t : r.terms_) t.c.im = -t.c.im;
    return r;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].z < o.terms_[j].z)) {
            out.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || o.terms_[j].z < terms_[i].z) {
            out.push_back(o.terms_[j++]);
        } else {
            Gauss c = terms_[i].c + o.terms_[j].c;
            if (!c.is_zero()) out.push_back({terms_[i].z, c});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) { return *this += -o; }

ExactScalar& ExactScalar::operator*=(const mpq_class& q) {
    if (sgn(q) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) {
        t.c.re *= q;
        t.c.im *= q;
    }
    return *this;
}

ExactScalar operator-(const ExactScalar& a) {
    ExactScalar r = a;
    for (auto& t : r.terms_) {
        t.c.re = -t.c.re;
        t.c.im = -t.c.im;
    }
    return r;
}

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    if (a.terms_.empty() || b.terms_.empty()) return {};
    if (a.terms_.size() == 1 && a.terms_[0].z == 1) {
        ExactScalar r = b;
        const Gauss& c = a.terms_[0].c;
        for (auto& t : r.terms_) t.c = t.c * c;
        return r;
    }
    if (b.terms_.size() == 1 && b.terms_[0].z == 1) return b * a;
    std::vector<ExactScalar::Term> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) {
            std::uint64_t g = std::gcd(s.z, t.z);
            std::uint64_t z = checked_mul(s.z / g, t.z / g);
            acc.push_back({z, s.c * t.c * Gauss(mpq_class(static_cast<unsigned long>(g)))});
        }
    std::sort(acc.begin(), acc.end(), [](const auto& x, const auto& y) { return x.z < y.z; });
    ExactScalar r;
    for (auto& t : acc) {
        if (!r.terms_.empty() && r.terms_.back().z == t.z) {
            r.terms_.back().c = r.terms_.back().c + t.c;
        } else {
            if (!r.terms_.empty() && r.terms_.back().c.is_zero()) r.terms_.pop_back();
            r.terms_.push_back(std::move(t));
        }
    }
    if (!r.terms_.empty() && r.terms_.back().c.is_zero()) r.terms_.pop_back();
    return r;
}

bool operator==(const ExactScalar& a, const ExactScalar& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].z != b.terms_[i].z || a.terms_[i].c != b.terms_[i].c) return false;
    return true;
}

bool operator<(const ExactScalar& a, const ExactScalar& b) {
    std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = a.terms_[i];
        const auto& t = b.terms_[i];
        if (s.z != t.z) return s.z < t.z;
        if (s.c.re != t.c.re) return s.c.re < t.c.re;
        if (s.c.im != t.c.im) return s.c.im < t.c.im;
    }
    return a.terms_.size() < b.terms_.size();
}

namespace {

// Powers of u as Q(i)-vectors over a growing radicand index; returns the
// least m and the coefficients q_0..q_{m-1} with u^m = sum q_j u^j.
std::pair<int, std::vector<Gauss>> minimal_relation(const ExactScalar& u) {
    std::vector<ExactScalar> pw{ExactScalar(1)};
    std::map<std::uint64_t, std::size_t> index;
    auto coords = [&](const ExactScalar& x) {
        for (const auto& t : x.terms()) index.emplace(t.z, index.size());
        return;
    };
    coords(pw[0]);
    for (int m = 1;; ++m) {
        pw.push_back(pw.back() * u);
        coords(pw.back());
        std::size_t rows = index.size();
        MatT<Gauss> a(rows, VecT<Gauss>(m));
        VecT<Gauss> b(rows);
        for (int j = 0; j <= m; ++j)
            for (const auto& t : pw[j].terms()) {
                std::size_t r = index.at(t.z);
                if (j < m)
                    a[r][j] = t.c;
                else
                    b[r] = t.c;
            }
        MatT<Gauss> aug = a;
        for (std::size_t r = 0; r < rows; ++r) aug[r].push_back(b[r]);
        auto piv = rref(aug, static_cast<std::size_t>(m));
        bool ok = true;
        for (std::size_t r = piv.size(); r < rows; ++r)
            if (!aug[r][m].is_zero()) ok = false;
        if (!ok) continue;
        std::vector<Gauss> q(m);
        for (std::size_t r = 0; r < piv.size(); ++r) q[piv[r]] = aug[r][m];
        return {m, q};
    }
}

}  // namespace

ExactScalar ExactScalar::inverse() const {
    if (terms_.empty()) throw FieldError("division by zero");
    if (terms_.size() == 1) {
        const Term& t = terms_[0];
        ExactScalar r;
        Gauss c = t.c.inverse() * Gauss(mpq_class(1, 1) / mpq_class(static_cast<unsigned long>(t.z)));
        r.terms_.push_back({t.z, c});
        return r;
    }
    auto [m, q] = minimal_relation(*this);
    // u^m = sum_{j<m} q_j u^j, so u * (u^{m-1} - sum_{j>=1} q_j u^{j-1}) = q_0.
    ExactScalar g(1);
    ExactScalar acc;  // Horner for u^{m-1} - sum_{j=1}^{m-1} q_j u^{j-1}
    acc = ExactScalar(1);
    for (int j = m - 1; j >= 1; --j) acc = acc * *this - ExactScalar(q[j]);
    return acc * ExactScalar(q[0].inverse());
}

int ExactScalar::minimal_degree() const {
    if (terms_.empty()) return 1;
    return minimal_relation(*this).first;
}

int ExactScalar::field_degree() const {
    if (!is_real()) throw FieldError("field_degree: imaginary part present");
    std::map<std::uint64_t, int> bit;
    std::vector<std::uint64_t> rows;
    for (const auto& t : terms_) {
        std::uint64_t mask = 0;
        for (auto p : prime_factors(t.z)) {
            auto it = bit.emplace(p, static_cast<int>(bit.size())).first;
            if (it->second >= 64) throw FieldError("field_degree: too many primes");
            mask |= std::uint64_t(1) << it->second;
        }
        if (mask) rows.push_back(mask);
    }
    int rank = 0;
    for (int b = 0; b < static_cast<int>(bit.size()); ++b) {
        std::uint64_t m = std::uint64_t(1) << b;
        auto it = std::find_if(rows.begin() + rank, rows.end(), [&](std::uint64_t r) { return r & m; });
        if (it == rows.end()) continue;
        std::swap(*it, rows[rank]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (static_cast<int>(i) != rank && (rows[i] & m)) rows[i] ^= rows[rank];
        ++rank;
    }
    return 1 << rank;
}

int ExactScalar::sign() const {
    if (!is_real()) throw FieldError("sign of non-real scalar");
    if (terms_.empty()) return 0;
    if (terms_.size() == 1) return sgn(terms_[0].c.re);
    for (unsigned long prec = 128;; prec *= 2) {
        mpf_class sum(0, prec), bound(0, prec);
        for (const auto& t : terms_) {
            mpf_class s(static_cast<unsigned long>(t.z), prec);
            s = sqrt(s);
            mpf_class c(t.c.re, prec);
            sum += c * s;
            bound += abs(c) * (s + 1);
        }
        mpf_class eps(1, prec);
        mpf_div_2exp(eps.get_mpf_t(), eps.get_mpf_t(), prec - 16);
        bound *= eps;
        if (abs(sum) > bound) return sgn(sum);
    }
}

double ExactScalar::approx_re() const {
    double s = 0;
    for (const auto& t : terms_) s += t.c.re.get_d() * std::sqrt(static_cast<double>(t.z));
    return s;
}

double ExactScalar::approx_im() const {
    double s = 0;
    for (const auto& t : terms_) s += t.c.im.get_d() * std::sqrt(static_cast<double>(t.z));
    return s;
}

std::string ExactScalar::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Gauss& c = it->c;
        std::string s;
        if (sgn(c.im) == 0) {
            s = rational_str(c.re);
        } else if (sgn(c.re) == 0) {
            s = rational_str(c.im) + "i";
        } else {
            s = "(" + rational_str(c.re) + (sgn(c.im) < 0 ? "-" : "+") + rational_str(abs(c.im)) + "i)";
        }
        if (it->z != 1) s += "*sqrt(" + std::to_string(it->z) + ")";
        if (out.empty())
            out = s;
        else if (s[0] == '-')
            out += s;
        else
            out += "+" + s;
    }
    return out;
}

namespace {

struct Parser {
    const std::string& s;
    std::size_t p = 0;

    [[noreturn]] void fail(const char* what) const {
        throw FieldError(std::string("parse error (") + what + ") at " + std::to_string(p) + " in '" + s + "'");
    }
    bool peek(char c) const { return p < s.size() && s[p] == c; }
    void expect(char c) {
        if (!peek(c)) fail("unexpected character");
        ++p;
    }
    std::string digits() {
        std::size_t b = p;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
        if (b == p) fail("digits expected");
        return s.substr(b, p - b);
    }
    mpq_class urational() {
        std::string t = digits();
        if (peek('/')) {
            ++p;
            t += "/" + digits();
        }
        return parse_rational(t);
    }
    ExactScalar term(bool negate) {
        Gauss c;
        if (peek('(')) {
            ++p;
            bool neg_re = false;
            if (peek('-')) {
                neg_re = true;
                ++p;
            }
            mpq_class re = urational();
            if (neg_re) re = -re;
            bool neg_im;
            if (peek('+'))
                neg_im = false;
            else if (peek('-'))
                neg_im = true;
            else
                fail("sign expected");
            ++p;
            mpq_class im = urational();
            expect('i');
            expect(')');
            c = Gauss(re, neg_im ? mpq_class(-im) : im);
        } else {
            mpq_class v = urational();
            if (peek('i')) {
                ++p;
                c = Gauss(mpq_class(0), v);
            } else {
                c = Gauss(v);
            }
        }
        std::uint64_t z = 1;
        if (peek('*')) {
            ++p;
            for (char ch : std::string("sqrt(")) expect(ch);
            std::string d = digits();
            expect(')');
            z = std::stoull(d);
            if (z == 0) fail("zero radicand");
        }
        if (negate) c = -c;
        return ExactScalar::normalize({{c, z}});
    }
};

}  // namespace

ExactScalar ExactScalar::parse(const std::string& str) {
    Parser ps{str};
    ExactScalar r;
    bool neg = false;
    if (ps.peek('-')) {
        neg = true;
        ++ps.p;
    }
    r += ps.term(neg);
    while (ps.p < str.size()) {
        if (ps.peek('+'))
            neg = false;
        else if (ps.peek('-'))
            neg = true;
        else
            ps.fail("'+' or '-' expected");
        ++ps.p;
        r += ps.term(neg);
    }
    return r;
}

std::uint64_t min_cyclotomic_order(std::uint64_t k) {
    if (!is_squarefree(k)) throw FieldError("min_cyclotomic_order: k must be squarefree and positive");
    int e = 0;
    for (auto p : prime_factors(k))
        if (p % 4 == 3) ++e;
    if (k % 2 == 1 && e % 2 == 0) return k;
    return 4 * k;
}

namespace {

using QPoly = std::vector<mpq_class>;  // coefficient of x^j at index j

void trim(QPoly& a) {
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

QPoly poly_mod(QPoly a, const QPoly& m) {
    trim(a);
    std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        mpq_class f = a.back() / m.back();
        std::size_t shift = a.size() - 1 - dm;
        for (std::size_t j = 0; j <= dm; ++j) a[shift + j] -= f * m[j];
        trim(a);
    }
    a.resize(dm, mpq_class(0));
    return a;
}

QPoly poly_div_exact(QPoly a, const QPoly& m) {
    trim(a);
    std::size_t dm = m.size() - 1;
    QPoly q(a.size() >= m.size() ? a.size() - dm : 1, mpq_class(0));
    while (a.size() > dm) {
        mpq_class f = a.back() / m.back();
        std::size_t shift = a.size() - 1 - dm;
        q[shift] = f;
        for (std::size_t j = 0; j <= dm; ++j) a[shift + j] -= f * m[j];
        trim(a);
    }
    if (!a.empty()) throw FieldError("cyclotomic division not exact");
    return q;
}

QPoly cyclotomic(unsigned n) {
    QPoly p(n + 1, mpq_class(0));
    p[0] = -1;
    p[n] = 1;
    for (unsigned d = 1; d < n; ++d)
        if (n % d == 0) p = poly_div_exact(p, cyclotomic(d));
    return p;
}

// Product modulo x^n - 1.
QPoly cyc_mul(const QPoly& a, const QPoly& b, unsigned n) {
    QPoly c(n, mpq_class(0));
    for (unsigned i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (unsigned j = 0; j < b.size(); ++j)
            if (sgn(b[j]) != 0) c[(i + j) % n] += a[i] * b[j];
    }
    return c;
}

QPoly monomial(unsigned e, unsigned n) {
    QPoly c(n, mpq_class(0));
    c[e % n] = 1;
    return c;
}

int legendre(unsigned a, unsigned p) {
    unsigned r = 1, base = a % p, e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = static_cast<unsigned>((1ull * r * base) % p);
        base = static_cast<unsigned>((1ull * base * base) % p);
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

}  // namespace

ExactScalar from_cyclotomic(const std::vector<mpq_class>& coeffs, unsigned n) {
    if (n == 0 || n > 24) throw FieldError("from_cyclotomic: order must be in 1..24");
    QPoly v(n, mpq_class(0));
    for (std::size_t j = 0; j < coeffs.size(); ++j) v[j % n] += coeffs[j];

    struct Cand {
        QPoly poly;
        ExactScalar value;
    };
    std::vector<Cand> cands{{monomial(0, n), ExactScalar(1)}};
    auto extend = [&](const QPoly& poly, const ExactScalar& value) {
        std::size_t m = cands.size();
        for (std::size_t j = 0; j < m; ++j) cands.push_back({cyc_mul(cands[j].poly, poly, n), cands[j].value * value});
    };
    for (auto p : prime_factors(n)) {
        if (p == 2) continue;
        QPoly g(n, mpq_class(0));
        unsigned step = n / static_cast<unsigned>(p);
        for (unsigned a = 1; a < p; ++a) g[(a * step) % n] += legendre(a, static_cast<unsigned>(p));
        ExactScalar val = ExactScalar::surd(p);
        if (p % 4 == 3) val = val * ExactScalar::imag_unit();
        extend(g, val);
    }
    if (n % 8 == 0) {
        QPoly s = monomial(n / 8, n);
        s[7 * n / 8] += 1;
        extend(s, ExactScalar::surd(2));
    }
    if (n % 4 == 0) extend(monomial(n / 4, n), ExactScalar::imag_unit());

    QPoly phi = cyclotomic(n);
    std::size_t deg = phi.size() - 1;
    QMat a(deg, QVec(cands.size(), mpq_class(0)));
    for (std::size_t c = 0; c < cands.size(); ++c) {
        QPoly r = poly_mod(cands[c].poly, phi);
        for (std::size_t i = 0; i < deg; ++i) a[i][c] = r[i];
    }
    QPoly target = poly_mod(v, phi);
    auto x = solve(a, QVec(target.begin(), target.end()), cands.size());
    if (!x) throw FieldError("from_cyclotomic: element does not lie in Q^sqrt(i)");
    ExactScalar r;
    for (std::size_t c = 0; c < cands.size(); ++c)
        if (sgn((*x)[c]) != 0) r += cands[c].value * ExactScalar((*x)[c]);
    return r;
}

}  // namespace lieks
