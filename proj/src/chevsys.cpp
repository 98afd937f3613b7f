#include "lieks/chevsys.hpp"

#include <stdexcept>

namespace lieks {

std::optional<Scalar> proportionality(const Vec& u, const Vec& v) {
    std::size_t p = 0;
    while (p < v.size() && v[p].is_zero()) ++p;
    if (p == v.size()) return std::nullopt;
    Scalar c = u[p] / v[p];
    if (scale(c, v) != u) return std::nullopt;
    return c;
}

namespace {

int find_proportional(const std::vector<Vec>& xhat, const Vec& u, Scalar& c) {
    for (std::size_t b = 0; b < xhat.size(); ++b) {
        auto q = proportionality(u, xhat[b]);
        if (q && !q->is_zero()) {
            c = *q;
            return static_cast<int>(b);
        }
    }
    return -1;
}

Scalar rational_power(const std::vector<Scalar>& tau, const IntVec& m) {
    Scalar s(1);
    for (std::size_t i = 0; i < m.size(); ++i) {
        Scalar base = m[i] >= 0 ? tau[i] : tau[i].inverse();
        for (int k = 0; k < std::abs(m[i]); ++k) s *= base;
    }
    return s;
}

}  // namespace

ConjugationData conjugation_data(const ChevalleyModel& M, const std::vector<Vec>& xhat, const LinMap& theta,
                                 const LinMap& sigma) {
    const RootSystem& R = M.R;
    ConjugationData cd;
    cd.theta_root.assign(R.size(), -1);
    cd.lambda.assign(R.size(), 0);
    cd.r.assign(R.size(), Scalar());
    for (int a = 0; a < R.size(); ++a) {
        Scalar c;
        int b = find_proportional(xhat, theta(xhat[a]), c);
        if (b < 0 || !(c == Scalar(1) || c == Scalar(-1)))
            throw std::invalid_argument("conjugation_data: theta does not permute the root vectors up to sign");
        cd.theta_root[a] = b;
        cd.lambda[a] = c == Scalar(1) ? 1 : -1;
        Scalar rc;
        int nb = find_proportional(xhat, sigma(xhat[a]), rc);
        if (nb != R.neg(b)) throw std::invalid_argument("conjugation_data: sigma(x_a) not a multiple of x_-(a o theta)");
        if (!rc.is_real()) throw std::invalid_argument("conjugation_data: r_a not real");
        cd.r[a] = rc;
    }
    for (int i = 0; i < R.rank(); ++i) {
        int s = R.simple(i), t = cd.theta_root[s];
        if (R.height(t) != 1 || !R.positive(t)) throw std::invalid_argument("conjugation_data: simple roots not theta-stable");
    }
    return cd;
}

ConjugationData conjugation_data(const RealForm& F) {
    const ChevalleyModel& M = *F.model;
    std::vector<Vec> xs;
    for (int a = 0; a < M.R.size(); ++a) xs.push_back(M.x(a));
    return conjugation_data(M, xs, F.theta, F.sigma);
}

std::string check_conjugation_data(const ChevalleyModel& M, const ConjugationData& cd) {
    const RootSystem& R = M.R;
    for (int a = 0; a < R.size(); ++a) {
        int na = R.neg(a), t = cd.theta_root[a];
        if (cd.lambda[a] != cd.lambda[na] || cd.lambda[a] != cd.lambda[t]) return "lambda not symmetric at root " + std::to_string(a);
        if (cd.r[a] * cd.r[na] != Scalar(1)) return "r_a r_-a != 1 at root " + std::to_string(a);
        if (cd.r[R.neg(t)] != cd.r[a].inverse()) return "r_-(a o theta) != 1/r_a at root " + std::to_string(a);
    }
    return "";
}

std::string check_cartan_action(const RealForm& F, const ConjugationData& cd) {
    const ChevalleyModel& M = *F.model;
    for (int a = 0; a < M.R.size(); ++a) {
        Vec ha = M.coroot(a), ht = M.coroot(cd.theta_root[a]);
        if (F.theta(ha) != ht) return "theta(h_a) != h_(a o theta)";
        if (F.sigma(ha) != neg(ht)) return "sigma(h_a) != -h_(a o theta)";
    }
    return "";
}

bool sign_law_holds(const ChevalleyModel& M, const ConjugationData& cd) {
    for (int i = 0; i < M.rank(); ++i) {
        int s = M.R.simple(i);
        if (cd.theta_root[s] != s) continue;
        if (cd.r[s].sign() != -cd.lambda[s]) return false;
    }
    return true;
}

ChevalleySystem standard_system(std::shared_ptr<const ChevalleyModel> M) {
    ChevalleySystem S;
    S.model = M;
    for (int a = 0; a < M->R.size(); ++a) {
        Scalar c(M->R.positive(a) ? 1 : -1);
        S.coeff.push_back(c);
        S.w.push_back(scale(c, M->x(a)));
    }
    return S;
}

std::string check_chevalley_system(const ChevalleySystem& S) {
    const ChevalleyModel& M = *S.model;
    LinMap A = identity_map(M.L.dim());
    for (int i = 0; i < M.rank(); ++i) A.cols[M.h_index(i)] = neg(M.h(i));
    for (int a = 0; a < M.R.size(); ++a) {
        int na = M.R.neg(a);
        if (S.coeff[a] * S.coeff[na] != Scalar(-1)) return "[w_a, w_-a] != -h_a";
        A.cols[M.x_index(a)] = scale(S.coeff[na] / S.coeff[a], M.x(na));
    }
    if (!is_homomorphism(M.L, M.L, A)) return "h -> -h, w_a -> w_-a is not an automorphism";
    return "";
}

std::string check_adapted(const ChevalleySystem& S, const ConjugationData& cd, const LinMap& theta, const LinMap& sigma) {
    const RootSystem& R = S.model->R;
    for (int a = 0; a < R.size(); ++a) {
        int t = cd.theta_root[a];
        Scalar l(cd.lambda[a]);
        if (theta(S.w[a]) != scale(l, S.w[t])) return "theta(w_a) != lambda_a w_(a o theta) at root " + std::to_string(a);
        if (sigma(S.w[a]) != scale(l, S.w[R.neg(t)])) return "sigma(w_a) != lambda_a w_-(a o theta) at root " + std::to_string(a);
    }
    return "";
}

bool structure_constants_symmetric(const ChevalleySystem& S) {
    const ChevalleyModel& M = *S.model;
    const RootSystem& R = M.R;
    for (int a = 0; a < R.size(); ++a)
        for (int b = 0; b < R.size(); ++b) {
            int c = R.sum(a, b);
            if (c < 0) continue;
            Scalar m1 = S.coeff[a] * S.coeff[b] * Scalar(M.N(a, b)) / S.coeff[c];
            int na = R.neg(a), nb = R.neg(b), nc = R.neg(c);
            Scalar m2 = S.coeff[na] * S.coeff[nb] * Scalar(M.N(na, nb)) / S.coeff[nc];
            if (m1 != m2) return false;
        }
    return true;
}

ChevalleySystem adapt_on_images(std::shared_ptr<const ChevalleyModel> Mp, const std::vector<Vec>& xhat,
                                const LinMap& theta, const LinMap& sigma, ConjugationData* cd_out) {
    const ChevalleyModel& M = *Mp;
    const RootSystem& R = M.R;
    ConjugationData cd = conjugation_data(M, xhat, theta, sigma);
    for (int a = 0; a < R.size(); ++a)
        if (cd.theta_root[a] != a) throw std::invalid_argument("adapt_system_inner: theta moves a root (outer type)");
    std::vector<Scalar> tau;
    for (int i = 0; i < M.rank(); ++i) {
        const Scalar& r = cd.r[R.simple(i)];
        if (!r.is_rational()) throw std::invalid_argument("adapt_system_inner: r_i not rational");
        mpq_class q = r.rational_value();
        tau.push_back(Scalar::sqrt_rational(1 / abs(q)));
    }
    ChevalleySystem S;
    S.model = Mp;
    for (int a = 0; a < R.size(); ++a) {
        Scalar c = rational_power(tau, R.roots[a]);
        if (!R.positive(a)) c = -c;
        S.coeff.push_back(c);
        S.w.push_back(scale(c, xhat[a]));
    }
    S.adapted = check_adapted(S, cd, theta, sigma).empty();
    if (cd_out) *cd_out = cd;
    return S;
}

ChevalleySystem adapt_system_inner(const RealForm& F) {
    if (F.spec.outer) throw std::invalid_argument("adapt_system_inner: form is of outer type");
    std::vector<Vec> xs;
    for (int a = 0; a < F.model->R.size(); ++a) xs.push_back(F.model->x(a));
    return adapt_on_images(F.model, xs, F.theta, F.sigma);
}

CarrierSystem carrier_adapted_system(const RealForm& F, const CarrierAlgebra& s) {
    const LieAlgebra& L = F.model->L;
    CarrierSystem cs;
    CartanMatrix cm{s.cartan_matrix, s.type};
    cs.model = std::make_shared<const ChevalleyModel>(build_chevalley_model(build_root_system(cm)));
    std::size_t r = s.generators.a.size();
    cs.eps = s.degrees;
    for (std::size_t i = 0; i < r; ++i) {
        const Vec& a = s.generators.a[i];
        const Vec& b = s.generators.b[i];
        auto rho = proportionality(F.sigma(a), b);
        if (!rho || rho->is_zero()) throw std::logic_error("carrier not sigma-stable");
        if (!rho->is_rational()) throw std::logic_error("carrier: sigma(a_i) / b_i not rational");
        mpq_class q = rho->rational_value();
        Scalar c = Scalar::sqrt_rational(1 / abs(q));
        cs.gens.c.push_back(s.generators.c[i]);
        cs.gens.a.push_back(scale(c, a));
        cs.gens.b.push_back(scale(c.inverse(), b));
        cs.lambda.push_back(Scalar(sgn(q)));
    }
    for (std::size_t i = 0; i < r; ++i)
        if (F.sigma(cs.gens.a[i]) != scale(cs.lambda[i], cs.gens.b[i])) throw std::logic_error("carrier: sigma(a_i) != +-b_i");
    cs.embed = extend_generators(*cs.model, L, cs.gens.c, cs.gens.a, cs.gens.b);
    if (!is_homomorphism(cs.model->L, L, cs.embed)) throw std::logic_error("carrier: generators do not define an embedding");
    std::vector<Vec> xhat;
    const RootSystem& R = cs.model->R;
    for (int a = 0; a < R.size(); ++a) {
        xhat.push_back(cs.embed(cs.model->x(a)));
        int d = 0;
        for (std::size_t i = 0; i < r; ++i) d += R.roots[a][i] * s.degrees[i];
        cs.root_degree.push_back(d);
    }
    cs.system = adapt_on_images(cs.model, xhat, F.theta, F.sigma, &cs.data);
    if (!cs.system.adapted) throw std::logic_error("carrier: adapted system verification failed");
    return cs;
}

}  // namespace lieks
