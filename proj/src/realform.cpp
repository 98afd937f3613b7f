#include "lieks/realform.hpp"

#include <algorithm>
#include <stdexcept>

namespace lieks {

IntVec root_signs(const RootSystem& R, const IntVec& lambda) {
    IntVec s(R.size(), 1);
    for (int r = 0; r < R.size(); ++r) {
        int odd = 0;
        for (int i = 0; i < R.rank(); ++i)
            if (lambda[i] == -1) odd += std::abs(R.roots[r][i]);
        s[r] = (odd % 2) ? -1 : 1;
    }
    return s;
}

LinMap inner_diagonal(const ChevalleyModel& M, const IntVec& lambda) {
    LinMap m = identity_map(M.L.dim());
    IntVec s = root_signs(M.R, lambda);
    for (int r = 0; r < M.R.size(); ++r)
        if (s[r] == -1) m.cols[M.x_index(r)] = neg(m.cols[M.x_index(r)]);
    return m;
}

LinMap compact_conjugation(const ChevalleyModel& M) {
    LinMap m;
    m.antilinear = true;
    m.cols.assign(M.L.dim(), Vec());
    for (int i = 0; i < M.rank(); ++i) m.cols[M.h_index(i)] = neg(M.h(i));
    for (int r = 0; r < M.R.size(); ++r) m.cols[M.x_index(r)] = neg(M.x(M.R.neg(r)));
    return m;
}

LinMap diagram_automorphism(const ChevalleyModel& M, const IntVec& pi) {
    std::vector<Vec> hs, xs, ys;
    for (int i = 0; i < M.rank(); ++i) {
        hs.push_back(M.h(pi[i]));
        xs.push_back(M.x(M.R.simple(pi[i])));
        ys.push_back(M.x(M.R.neg(M.R.simple(pi[i]))));
    }
    return extend_generators(M, M.L, hs, xs, ys);
}

IntVec standard_diagram_involution(char letter, int rank) {
    IntVec pi(rank);
    for (int i = 0; i < rank; ++i) pi[i] = i;
    if (letter == 'A' && rank >= 2)
        for (int i = 0; i < rank; ++i) pi[i] = rank - 1 - i;
    if (letter == 'D') std::swap(pi[rank - 2], pi[rank - 1]);
    return pi;
}

namespace {

// (root, coefficient) with v = c x_root, or (-1, 0).
std::pair<int, Scalar> as_root_vector(const ChevalleyModel& M, const Vec& v) {
    int found = -1;
    Scalar c;
    for (int b = 0; b < M.dim(); ++b) {
        if (v[b].is_zero()) continue;
        int r = M.root_of(b);
        if (r < 0 || found >= 0) return {-1, Scalar()};
        found = r;
        c = v[b];
    }
    return {found, c};
}

Scalar I() { return Scalar::imag_unit(); }

struct PairBuilder {
    const ChevalleyModel& M;
    std::vector<Vec>& vecs;
    std::vector<std::string>& names;

    // u_a - u_{-a}, i(u_a + u_{-a})
    void k_pair(const Vec& up, const Vec& um, const std::string& a, const std::string& b) {
        vecs.push_back(sub(up, um));
        names.push_back(a + "-" + b);
        vecs.push_back(scale(I(), add(up, um)));
        names.push_back("i(" + a + "+" + b + ")");
    }
    // i(u_a - u_{-a}), u_a + u_{-a}
    void p_pair(const Vec& up, const Vec& um, const std::string& a, const std::string& b) {
        vecs.push_back(scale(I(), sub(up, um)));
        names.push_back("i(" + a + "-" + b + ")");
        vecs.push_back(add(up, um));
        names.push_back(a + "+" + b);
    }
};

std::string root_label(const RootSystem& R, int r) {
    std::string s;
    for (int v : R.roots[r]) s += std::to_string(std::abs(v));
    return s;
}

}  // namespace

std::vector<Vec> RealForm::basis() const {
    std::vector<Vec> b = K;
    b.insert(b.end(), P.begin(), P.end());
    return b;
}

std::vector<Vec> RealForm::h0_basis() const {
    if (spec.outer) return std::vector<Vec>(K.begin(), K.begin() + static_cast<long>(h0_count));
    return std::vector<Vec>(K.end() - static_cast<long>(h0_count), K.end());
}

Vec RealForm::to_real(const Vec& v) const { return matvec(B_inverse, v); }

Vec RealForm::from_real(const Vec& c) const {
    Vec v(model->L.dim());
    auto b = basis();
    for (std::size_t j = 0; j < b.size(); ++j)
        if (!c[j].is_zero()) v = add(v, scale(c[j], b[j]));
    return v;
}

RealForm build_real_form(std::shared_ptr<const ChevalleyModel> M0, const InvolutionSpec& S) {
    const RootSystem& R0 = M0->R;
    int l = R0.rank();
    if (static_cast<int>(S.lambda.size()) != l) throw std::invalid_argument("build_real_form: lambda has wrong length");
    for (int v : S.lambda)
        if (v != 1 && v != -1) throw std::invalid_argument("build_real_form: lambda entries must be +-1");
    IntVec pi = S.pi;
    if (pi.empty())
        for (int i = 0; i < l; ++i) pi.push_back(i);
    if (static_cast<int>(pi.size()) != l) throw std::invalid_argument("build_real_form: pi has wrong length");
    for (int i = 0; i < l; ++i) {
        if (pi[i] < 0 || pi[i] >= l || pi[pi[i]] != i) throw std::invalid_argument("build_real_form: pi not an involution");
        for (int j = 0; j < l; ++j)
            if (R0.cartan.entries[j][i] != R0.cartan.entries[pi[j]][pi[i]])
                throw std::invalid_argument("build_real_form: pi does not preserve the Cartan matrix");
    }
    bool identity_pi = true;
    for (int i = 0; i < l; ++i) identity_pi = identity_pi && pi[i] == i;
    char letter = R0.cartan.type[0];
    bool a_even = letter == 'A' && l % 2 == 0;
    if (S.outer) {
        if (identity_pi) throw std::invalid_argument("build_real_form: outer spec needs a nontrivial pi");
        if (letter != 'A' && letter != 'D' && letter != 'E')
            throw std::invalid_argument("build_real_form: outer involutions exist only for types A, D, E6");
        for (int i = 0; i < l; ++i)
            if (S.lambda[pi[i]] != S.lambda[i]) throw std::invalid_argument("build_real_form: need lambda_pi(i) = lambda_i");
        if (a_even)
            for (int v : S.lambda)
                if (v != 1) throw std::invalid_argument("build_real_form: A_2m outer requires chi = id");
    } else if (!identity_pi) {
        throw std::invalid_argument("build_real_form: inner spec with nontrivial pi");
    }

    RealForm F;
    F.spec = S;
    F.spec.pi = pi;
    if (!S.outer) {
        F.model = M0;
        F.phi = identity_map(M0->L.dim());
    } else {
        // sign adjustment so that phi(x_a) = x_{phi a} off the fixed roots
        LinMap phi0 = diagram_automorphism(*M0, pi);
        std::vector<int> s(R0.size(), 1);
        for (int r = 0; r < R0.npos; ++r) {
            auto [p, c] = as_root_vector(*M0, phi0.cols[M0->x_index(r)]);
            if (p < 0 || !(c == Scalar(1) || c == Scalar(-1))) throw std::logic_error("diagram automorphism not monomial");
            if (p == r) {
                Scalar want = a_even ? Scalar(-1) : Scalar(1);
                if (c != want) throw std::logic_error("diagram automorphism has unexpected sign on a fixed root");
            } else if (r < p) {
                s[p] = c == Scalar(1) ? 1 : -1;
            }
        }
        for (int r = 0; r < R0.npos; ++r) s[R0.neg(r)] = s[r];
        F.model = std::make_shared<const ChevalleyModel>(resign_model(*M0, s));
        F.phi = diagram_automorphism(*F.model, pi);
        for (int r = 0; r < R0.size(); ++r) {
            auto [p, c] = as_root_vector(*F.model, F.phi.cols[F.model->x_index(r)]);
            bool fixed = p == r;
            if (!fixed && c != Scalar(1)) throw std::logic_error("sign adjustment failed");
        }
    }
    const ChevalleyModel& M = *F.model;
    const RootSystem& R = M.R;
    F.root_lambda = root_signs(R, S.lambda);
    LinMap chi = inner_diagonal(M, S.lambda);
    F.theta = compose(F.phi, chi);
    F.sigma = compose(F.theta, compact_conjugation(M));

    PairBuilder kb{M, F.K, F.K_names}, pb{M, F.P, F.P_names};
    auto nm = [&](int r) { return M.L.names[M.x_index(r)]; };
    if (!S.outer) {
        for (int r = 0; r < R.npos; ++r) {
            if (F.root_lambda[r] == 1)
                kb.k_pair(M.x(r), M.x(R.neg(r)), nm(r), nm(R.neg(r)));
            else
                pb.p_pair(M.x(r), M.x(R.neg(r)), nm(r), nm(R.neg(r)));
        }
        for (int i = 0; i < l; ++i) {
            F.K.push_back(scale(I(), M.h(i)));
            F.K_names.push_back("ih" + std::to_string(i + 1));
        }
        F.h0_count = l;
    } else {
        for (int i = 0; i < l; ++i)
            if (pi[i] == i) {
                F.K.push_back(scale(I(), M.h(i)));
                F.K_names.push_back("ih" + std::to_string(i + 1));
            }
        for (int i = 0; i < l; ++i)
            if (i < pi[i]) {
                F.reps.push_back(i);
                F.K.push_back(scale(I(), add(M.h(i), M.h(pi[i]))));
                F.K_names.push_back("i(h" + std::to_string(i + 1) + "+h" + std::to_string(pi[i] + 1) + ")");
            }
        F.h0_count = F.K.size();
        for (int i : F.reps) {
            F.P.push_back(sub(M.h(i), M.h(pi[i])));
            F.P_names.push_back("h" + std::to_string(i + 1) + "-h" + std::to_string(pi[i] + 1));
        }
        std::vector<int> phi_root(R.size());
        for (int r = 0; r < R.size(); ++r) phi_root[r] = as_root_vector(M, F.phi.cols[M.x_index(r)]).first;
        for (int r = 0; r < R.npos; ++r)
            if (r <= phi_root[r]) F.psi_plus.push_back(r);
        auto u = [&](int r) {
            return phi_root[r] == r ? M.x(r) : add(M.x(r), F.phi(M.x(r)));
        };
        auto v = [&](int r) { return sub(M.x(r), F.phi(M.x(r))); };
        auto uname = [&](int r) { return "u" + std::string(R.positive(r) ? "" : "-") + root_label(R, r); };
        auto vname = [&](int r) { return "v" + std::string(R.positive(r) ? "" : "-") + root_label(R, r); };
        // u-pairs
        for (int r : F.psi_plus) {
            int nr = R.neg(r);
            bool fixed = phi_root[r] == r;
            bool in_k;
            if (fixed) {
                in_k = F.theta(M.x(r)) == M.x(r);
            } else {
                in_k = F.root_lambda[r] == 1;
            }
            if (in_k)
                kb.k_pair(u(r), u(nr), uname(r), uname(nr));
            else
                pb.p_pair(u(r), u(nr), uname(r), uname(nr));
        }
        // v-pairs
        for (int r : F.psi_plus) {
            int nr = R.neg(r);
            if (phi_root[r] == r) continue;
            if (F.root_lambda[r] == -1)
                kb.k_pair(v(r), v(nr), vname(r), vname(nr));
            else
                pb.p_pair(v(r), v(nr), vname(r), vname(nr));
        }
    }

    auto B = F.basis();
    if (static_cast<int>(B.size()) != M.dim()) throw std::logic_error("K u P has wrong size");
    Mat Bm(M.dim(), Vec(M.dim()));
    for (int j = 0; j < M.dim(); ++j)
        for (int i = 0; i < M.dim(); ++i) Bm[i][j] = B[j][i];
    auto inv = inverse(Bm);
    if (!inv) throw std::logic_error("K u P is not a basis");
    F.B_inverse = *inv;

    std::size_t n = B.size();
    F.table = LieAlgebra(n);
    F.table.names = F.K_names;
    F.table.names.insert(F.table.names.end(), F.P_names.begin(), F.P_names.end());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec c = F.to_real(M.L.bracket(B[i], B[j]));
            SparseRow row;
            for (std::size_t k = 0; k < n; ++k) {
                if (c[k].is_zero()) continue;
                if (!c[k].is_rational()) throw std::logic_error("real table has a non-rational structure constant");
                row.push_back({static_cast<std::uint32_t>(k), c[k].rational_value()});
            }
            if (!row.empty()) F.table.set(i, j, row);
        }
    F.killing = signature(to_scalar_mat(F.table.killing()));
    return F;
}

RealForm compact_form(std::shared_ptr<const ChevalleyModel> M) {
    InvolutionSpec S;
    S.lambda.assign(M->rank(), 1);
    S.id = M->R.cartan.type + ":inner:compact";
    return build_real_form(std::move(M), S);
}

namespace {

std::string lbl(const std::string& name, int p, int q) {
    return name + "(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

}  // namespace

std::vector<InvolutionSpec> enumerate_involutions(char letter, int rank) {
    if (!supported_type(letter, rank))
        throw std::invalid_argument(std::string("unsupported type ") + letter + std::to_string(rank));
    std::string t = std::string(1, letter) + std::to_string(rank);
    int l = rank;
    std::vector<InvolutionSpec> out;
    auto inner = [&](int k, const std::string& label) {
        InvolutionSpec s;
        s.lambda.assign(l, 1);
        if (k > 0) s.lambda[k - 1] = -1;
        for (int i = 0; i < l; ++i) s.pi.push_back(i);
        s.id = t + ":inner:" + (k > 0 ? "k" + std::to_string(k) : "compact");
        s.label = label;
        out.push_back(s);
    };
    auto outer = [&](int k, const std::string& label) {
        InvolutionSpec s;
        s.outer = true;
        s.lambda.assign(l, 1);
        s.pi = standard_diagram_involution(letter, l);
        if (k > 0) s.lambda[k - 1] = -1;
        s.id = t + ":outer" + (k > 0 ? ":k" + std::to_string(k) : "");
        s.label = label;
        out.push_back(s);
    };
    int n = l + 1;
    switch (letter) {
        case 'A':
            inner(0, "su(" + std::to_string(n) + ")");
            for (int k = 1; k <= (l + 1) / 2; ++k) inner(k, l == 1 ? "sl(2,R)" : lbl("su", k, n - k));
            if (l >= 2) {
                if (l % 2 == 0) {
                    outer(0, "sl(" + std::to_string(n) + ",R)");
                } else {
                    // chi = id gives k = sp((l+1)/2), i.e. su*(l+1); lambda_{(l+1)/2} = -1 gives sl(l+1,R)
                    outer(0, "su*(" + std::to_string(n) + ")");
                    outer((l + 1) / 2, "sl(" + std::to_string(n) + ",R)");
                }
            }
            break;
        case 'B':
            inner(0, "so(" + std::to_string(2 * l + 1) + ")");
            for (int k = 1; k <= l; ++k) inner(k, lbl("so", 2 * k, 2 * l + 1 - 2 * k));
            break;
        case 'C':
            inner(0, "sp(" + std::to_string(l) + ")");
            for (int k = 1; k <= l / 2; ++k) inner(k, lbl("sp", k, l - k));
            inner(l, "sp(" + std::to_string(2 * l) + ",R)");
            break;
        case 'D':
            inner(0, "so(" + std::to_string(2 * l) + ")");
            for (int k = 1; k <= l / 2; ++k) inner(k, lbl("so", 2 * k, 2 * l - 2 * k));
            outer(0, lbl("so", 1, 2 * l - 1));
            for (int k = 1; k <= (l + 1) / 2 - 1; ++k) outer(k, lbl("so", 2 * k + 1, 2 * l - 2 * k - 1));
            break;
        case 'G':
            inner(0, "g2(compact)");
            inner(1, "g2(split)");
            break;
    }
    return out;
}

WeightDecomposition weight_space_decomposition(const RealForm& F) {
    const ChevalleyModel& M = *F.model;
    const RootSystem& R = M.R;
    int l = R.rank();
    const IntVec& pi = F.spec.pi;
    WeightDecomposition W;
    std::vector<std::vector<int>> frame_idx;  // simple indices summed in each frame element
    if (!F.spec.outer) {
        for (int i = 0; i < l; ++i) frame_idx.push_back({i});
    } else {
        for (int i = 0; i < l; ++i)
            if (pi[i] == i) frame_idx.push_back({i});
        for (int i = 0; i < l; ++i)
            if (i < pi[i]) frame_idx.push_back({i, pi[i]});
        for (int i = 0; i < l; ++i)
            if (i < pi[i]) {
                QVec v(M.dim(), mpq_class(0));
                v[M.h_index(i)] = 1;
                v[M.h_index(pi[i])] = -1;
                W.p_zero.push_back(v);
            }
    }
    for (const auto& f : frame_idx) {
        QVec v(M.dim(), mpq_class(0));
        for (int i : f) v[M.h_index(i)] += 1;
        W.frame.push_back(v);
    }
    auto weight_of = [&](int r) {
        IntVec w;
        for (const auto& f : frame_idx) {
            int s = 0;
            for (int j : f)
                for (int k = 0; k < l; ++k) s += R.roots[r][k] * R.cartan.entries[k][j];
            w.push_back(s);
        }
        return w;
    };
    auto parity_of = [&](const Vec& v) {
        Vec t = F.theta(v);
        if (t == v) return 0;
        if (t == neg(v)) return 1;
        throw std::logic_error("weight vector is not a theta-eigenvector");
    };
    if (!F.spec.outer) {
        for (int r = 0; r < R.size(); ++r) {
            Vec x = M.x(r);
            W.vectors.push_back({to_rational_vec(x), weight_of(r), parity_of(x), r, 'x'});
        }
        return W;
    }
    std::vector<int> reps;
    for (int r : F.psi_plus) reps.push_back(r);
    for (int r : F.psi_plus) reps.push_back(R.neg(r));
    for (int r : reps) {
        Vec x = M.x(r);
        Vec px = F.phi(x);
        auto [p, c] = as_root_vector(M, px);
        if (p == r) {
            W.vectors.push_back({to_rational_vec(x), weight_of(r), parity_of(x), r, 'u'});
        } else {
            Vec u = add(x, px), v = sub(x, px);
            W.vectors.push_back({to_rational_vec(u), weight_of(r), parity_of(u), r, 'u'});
            W.vectors.push_back({to_rational_vec(v), weight_of(r), parity_of(v), r, 'v'});
        }
    }
    return W;
}

std::string check_real_form(const RealForm& F) {
    const ChevalleyModel& M = *F.model;
    std::size_t k = F.K.size(), n = F.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            bool pi_ = i >= k, pj = j >= k;
            for (const auto& [idx, c] : F.table.entry(i, j)) {
                bool pk = idx >= k;
                if (pk != (pi_ != pj)) return "Cartan grading violated at [" + F.table.names[i] + "," + F.table.names[j] + "]";
            }
        }
    QMat kil = F.table.killing();
    Mat kk(k, Vec(k)), pp(n - k, Vec(n - k));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if ((i < k) != (j < k) && sgn(kil[i][j]) != 0) return "Killing form couples k and p";
            if (i < k && j < k) kk[i][j] = Scalar(kil[i][j]);
            if (i >= k && j >= k) pp[i - k][j - k] = Scalar(kil[i][j]);
        }
    if (k > 0 && signature(kk).neg != static_cast<int>(k)) return "Killing form not negative definite on k";
    if (n > k && signature(pp).pos != static_cast<int>(n - k)) return "Killing form not positive definite on p";
    LinMap id = identity_map(M.L.dim());
    LinMap s2 = compose(F.sigma, F.sigma);
    s2.antilinear = false;
    if (!maps_equal(s2, id)) return "sigma^2 != id";
    if (!maps_equal(compose(F.theta, F.theta), id)) return "theta^2 != id";
    if (!maps_equal(compose(F.sigma, F.theta), compose(F.theta, F.sigma))) return "sigma theta != theta sigma";
    for (std::size_t i = 0; i < n; ++i) {
        Vec b = i < k ? F.K[i] : F.P[i - k];
        if (F.sigma(b) != b) return "basis element not sigma-fixed: " + F.table.names[i];
        Vec t = F.theta(b);
        if (i < k ? t != b : t != neg(b)) return "theta eigenvalue wrong on " + F.table.names[i];
    }
    if (!is_homomorphism(M.L, M.L, F.theta)) return "theta is not an automorphism";
    return "";
}

}  // namespace lieks
