#include "lieks/carrierdb.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

namespace lieks {

namespace {

constexpr const char* kHeader = "carrierdb-v1";

ChevalleyModel record_model(const IntMat& cartan, const std::string& type) {
    return build_chevalley_model(build_root_system(CartanMatrix{cartan, type}));
}

GeneratorTriple standard_generators(const ChevalleyModel& M) { return {M.gens_h(), M.gens_x(), M.gens_y()}; }

std::vector<mpq_class> defining_coefficients(const IntMat& c, const std::vector<int>& eps) {
    std::size_t r = c.size();
    QMat C(r, QVec(r));
    QVec rhs(r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) C[i][j] = c[i][j];
        rhs[i] = 2 * eps[i];
    }
    auto d = solve(C, rhs, r);
    if (!d) throw CarrierDbError("singular Cartan matrix");
    return *d;
}

int sign_of(const Scalar& s) {
    if (!s.is_rational() || s.is_zero()) throw CarrierDbError("lambda must be a nonzero rational");
    return sgn(s.rational_value());
}

std::string sparse_text(const Vec& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        if (!out.empty()) out += ' ';
        out += std::to_string(i) + "=" + v[i].str();
    }
    return out.empty() ? "0" : out;
}

Vec parse_sparse(const std::string& text, std::size_t dim) {
    Vec v(dim);
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        if (tok == "0") continue;
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw CarrierDbError("bad vector entry '" + tok + "'");
        std::size_t idx = std::stoul(tok.substr(0, eq));
        if (idx >= dim) throw CarrierDbError("vector index out of range");
        v[idx] = Scalar::parse(tok.substr(eq + 1));
    }
    return v;
}

std::string join_ints(const std::vector<int>& v, char sep = ',') {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
    return out;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    std::string tok;
    std::istringstream is(s);
    while (std::getline(is, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    return out;
}

std::string vec_degree_error(const ChevalleyModel& M, const std::vector<int>& eps, const Vec& v, int degree) {
    for (int b = 0; b < M.dim(); ++b) {
        if (v[b].is_zero()) continue;
        int r = M.root_of(b), d = 0;
        if (r >= 0)
            for (int i = 0; i < M.rank(); ++i) d += M.R.roots[r][i] * eps[i];
        if (d != degree) return "component outside degree " + std::to_string(degree);
    }
    return "";
}

}  // namespace

std::string record_key(const std::string& type, const CanonicalOrder& co) {
    std::string k = type + "_e";
    for (int e : co.eps) k += std::to_string(e);
    k += "_l";
    for (int l : co.lambda) k += l > 0 ? 'p' : 'm';
    k += "_c";
    for (std::size_t i = 0; i < co.cartan.size(); ++i)
        for (std::size_t j = 0; j < co.cartan.size(); ++j)
            if (i != j) k += std::to_string(-co.cartan[i][j]);
    return k;
}

std::string CarrierRecord::key() const { return record_key(type, CanonicalOrder{{}, cartan, eps, lambda}); }

bool operator==(const CarrierRecord& a, const CarrierRecord& b) { return record_to_text(a) == record_to_text(b); }

CanonicalOrder canonical_order(const IntMat& c, const std::vector<int>& eps, const std::vector<int>& lambda_signs) {
    int r = static_cast<int>(c.size());
    std::vector<int> p(r);
    std::iota(p.begin(), p.end(), 0);
    std::optional<CanonicalOrder> best;
    do {
        CanonicalOrder cur;
        cur.perm = p;
        cur.cartan.assign(r, std::vector<int>(r));
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < r; ++j) cur.cartan[i][j] = c[p[i]][p[j]];
            cur.eps.push_back(eps[p[i]]);
            cur.lambda.push_back(lambda_signs[p[i]]);
        }
        if (!best || std::tie(cur.eps, cur.cartan, cur.lambda) < std::tie(best->eps, best->cartan, best->lambda)) best = cur;
    } while (std::next_permutation(p.begin(), p.end()));
    return *best;
}

LinMap record_sigma(const CarrierRecord& r) {
    ChevalleyModel M = record_model(r.cartan, r.type);
    std::vector<Vec> hs, xs, ys;
    for (int i = 0; i < M.rank(); ++i) {
        Scalar l(r.lambda[i]);
        hs.push_back(neg(M.h(i)));
        xs.push_back(scale(l, M.x(M.R.neg(M.R.simple(i)))));
        ys.push_back(scale(l, M.x(M.R.simple(i))));
    }
    LinMap s = extend_generators(M, M.L, hs, xs, ys);
    s.antilinear = true;
    return s;
}

std::string validate_record(const CarrierRecord& r) {
    std::size_t n = r.cartan.size();
    if (n == 0) return "empty Cartan matrix";
    if (r.eps.size() != n || r.lambda.size() != n) return "eps/lambda length mismatch";
    for (std::size_t i = 0; i < n; ++i) {
        if (r.eps[i] != 0 && r.eps[i] != 1) return "eps entries must be 0 or 1";
        if (r.lambda[i] != 1 && r.lambda[i] != -1) return "lambda entries must be +-1";
    }
    if (std::all_of(r.eps.begin(), r.eps.end(), [](int e) { return e == 1; })) return "carrier is principal";
    std::string type;
    try {
        type = classify_cartan(r.cartan);
    } catch (const std::exception& ex) {
        return std::string("Cartan matrix: ") + ex.what();
    }
    if (type != r.type) return "type " + r.type + " does not match Cartan matrix (" + type + ")";
    if (type.find('+') != std::string::npos) return "carrier is not simple";
    CanonicalOrder co = canonical_order(r.cartan, r.eps, r.lambda);
    if (co.cartan != r.cartan || co.eps != r.eps || co.lambda != r.lambda) return "generators not in canonical order";
    ChevalleyModel M = record_model(r.cartan, r.type);
    if (r.table.dim() != M.L.dim()) return "multiplication table has the wrong dimension";
    std::size_t dim = M.L.dim();
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j)
            if (r.table.bracket(unit_vec(dim, i), unit_vec(dim, j)) != M.L.bracket(unit_vec(dim, i), unit_vec(dim, j)))
                return "multiplication table differs from the Chevalley table of the Cartan matrix";
    GeneratorTriple g = standard_generators(M);
    if (r.generators.c != g.c || r.generators.a != g.a || r.generators.b != g.b) return "canonical generators are not the standard ones";
    if (!satisfies_generator_relations(r.table, r.cartan, r.generators)) return "canonical generator relations fail";

    const Sl2Triple& t = r.triple;
    if (t.kind != TripleKind::ComplexCayley) return "triple not tagged complex-Cayley";
    if (t.e.size() != dim || t.f.size() != dim || t.h.size() != dim) return "triple has the wrong dimension";
    const LieAlgebra& L = r.table;
    if (L.bracket(t.h, t.e) != scale(Scalar(2), t.e)) return "[h,e] != 2e";
    if (L.bracket(t.h, t.f) != scale(Scalar(-2), t.f)) return "[h,f] != -2f";
    if (L.bracket(t.e, t.f) != t.h) return "[e,f] != h";
    if (record_sigma(r)(t.e) != t.f) return "sigma(e) != f";
    if (auto err = vec_degree_error(M, r.eps, t.e, 1); !err.empty()) return "e: " + err;
    if (auto err = vec_degree_error(M, r.eps, t.f, -1); !err.empty()) return "f: " + err;
    Vec h(dim);
    auto d = defining_coefficients(r.cartan, r.eps);
    for (std::size_t i = 0; i < n; ++i) h = add(h, scale(Scalar(d[i]), M.h(static_cast<int>(i))));
    if (t.h != h) return "h is not twice the defining element";
    std::vector<Vec> s0_img;
    std::size_t s1 = 0;
    for (std::size_t i = 0; i < n; ++i) s0_img.push_back(L.bracket(M.h(static_cast<int>(i)), t.e));
    for (int a = 0; a < M.R.size(); ++a) {
        int deg = 0;
        for (std::size_t i = 0; i < n; ++i) deg += M.R.roots[a][i] * r.eps[i];
        if (deg == 0) s0_img.push_back(L.bracket(M.x(a), t.e));
        if (deg == 1) ++s1;
    }
    if (span_rank(s0_img) != s1) return "e not in general position";
    return "";
}

std::string record_to_text(const CarrierRecord& r) {
    std::ostringstream os;
    os << kHeader << "\n";
    os << "type " << r.type << "\n";
    os << "cartan";
    for (std::size_t i = 0; i < r.cartan.size(); ++i) os << (i ? ";" : " ") << join_ints(r.cartan[i]);
    os << "\n";
    os << "eps " << join_ints(r.eps) << "\n";
    os << "lambda " << join_ints(r.lambda) << "\n";
    os << "dim " << r.table.dim() << "\n";
    os << "names";
    for (const auto& nm : r.table.names) os << " " << nm;
    os << "\n";
    os << "table\n";
    for (std::size_t i = 0; i < r.table.dim(); ++i)
        for (std::size_t j = i + 1; j < r.table.dim(); ++j) {
            const auto& e = r.table.entry(i, j);
            if (e.empty()) continue;
            os << i << " " << j;
            for (const auto& [k, c] : e) os << " " << k << "=" << rational_str(c);
            os << "\n";
        }
    os << "end-table\n";
    for (std::size_t i = 0; i < r.generators.c.size(); ++i) {
        os << "k" << i + 1 << " " << sparse_text(r.generators.c[i]) << "\n";
        os << "a" << i + 1 << " " << sparse_text(r.generators.a[i]) << "\n";
        os << "b" << i + 1 << " " << sparse_text(r.generators.b[i]) << "\n";
    }
    os << "f " << sparse_text(r.triple.f) << "\n";
    os << "h " << sparse_text(r.triple.h) << "\n";
    os << "e " << sparse_text(r.triple.e) << "\n";
    os << "end\n";
    return os.str();
}

CarrierRecord record_from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    auto next = [&](const std::string& tag) {
        if (!std::getline(is, line)) throw CarrierDbError("unexpected end of record, expected '" + tag + "'");
        if (line.compare(0, tag.size(), tag) != 0 || (line.size() > tag.size() && line[tag.size()] != ' '))
            throw CarrierDbError("expected '" + tag + "', got '" + line + "'");
        return line.size() > tag.size() ? line.substr(tag.size() + 1) : std::string();
    };
    if (!std::getline(is, line) || line != kHeader) throw CarrierDbError("missing header " + std::string(kHeader));
    CarrierRecord r;
    try {
        r.type = next("type");
        std::string cart = next("cartan"), row;
        std::istringstream cs(cart);
        while (std::getline(cs, row, ';')) r.cartan.push_back(parse_ints(row));
        r.eps = parse_ints(next("eps"));
        r.lambda = parse_ints(next("lambda"));
        std::size_t dim = std::stoul(next("dim"));
        r.table = LieAlgebra(dim);
        std::istringstream ns(next("names"));
        std::vector<std::string> names;
        std::string nm;
        while (ns >> nm) names.push_back(nm);
        r.table.names = names;
        if (names.size() != dim) throw CarrierDbError("names count does not match dim");
        next("table");
        while (std::getline(is, line) && line != "end-table") {
            std::istringstream ls(line);
            std::size_t i, j;
            if (!(ls >> i >> j) || i >= dim || j >= dim || i >= j) throw CarrierDbError("bad table row '" + line + "'");
            SparseRow rowv;
            std::string tok;
            while (ls >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) throw CarrierDbError("bad table entry '" + tok + "'");
                std::size_t k = std::stoul(tok.substr(0, eq));
                if (k >= dim) throw CarrierDbError("table index out of range");
                rowv.push_back({static_cast<std::uint32_t>(k), parse_rational(tok.substr(eq + 1))});
            }
            r.table.set(i, j, rowv);
        }
        if (line != "end-table") throw CarrierDbError("unterminated table");
        for (std::size_t i = 0; i < r.cartan.size(); ++i) {
            std::string s = std::to_string(i + 1);
            r.generators.c.push_back(parse_sparse(next("k" + s), dim));
            r.generators.a.push_back(parse_sparse(next("a" + s), dim));
            r.generators.b.push_back(parse_sparse(next("b" + s), dim));
        }
        r.triple.f = parse_sparse(next("f"), dim);
        r.triple.h = parse_sparse(next("h"), dim);
        r.triple.e = parse_sparse(next("e"), dim);
        r.triple.kind = TripleKind::ComplexCayley;
        next("end");
        while (std::getline(is, line))
            if (!line.empty()) throw CarrierDbError("trailing content after end: '" + line + "'");
    } catch (const CarrierDbError&) {
        throw;
    } catch (const std::exception& ex) {
        throw CarrierDbError(std::string("malformed record: ") + ex.what());
    }
    if (std::string err = validate_record(r); !err.empty()) throw CarrierDbError("invalid record: " + err);
    return r;
}

std::vector<CarrierRecord> make_records(const RealForm& F, const CarrierSystem& cs, const CarrierAlgebra& s,
                                        const Sl2Triple& complex_triple) {
    const LieAlgebra& L = F.model->L;
    const RootSystem& R = cs.model->R;
    std::vector<int> odd;
    std::vector<Vec> W;
    for (int a = 0; a < R.npos; ++a)
        if (cs.root_degree[a] == 1) {
            odd.push_back(a);
            W.push_back(cs.system.w[a]);
        }
    auto coords = coordinates(W, complex_triple.e);
    if (!coords) throw CarrierDbError("e does not lie in s_1");
    auto d = defining_coefficients(s.cartan_matrix, s.degrees);
    std::vector<CarrierRecord> out;
    for (const auto& comp : cartan_components(s.cartan_matrix)) {
        std::size_t r = comp.size();
        IntMat sub(r, std::vector<int>(r));
        std::vector<int> eps, lam;
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < r; ++j) sub[i][j] = s.cartan_matrix[comp[i]][comp[j]];
            eps.push_back(s.degrees[comp[i]]);
            lam.push_back(sign_of(cs.lambda[comp[i]]));
        }
        if (std::all_of(eps.begin(), eps.end(), [](int e) { return e == 1; })) continue;
        Vec e(L.dim()), h(L.dim());
        for (std::size_t p = 0; p < odd.size(); ++p) {
            int first = 0;
            while (R.roots[odd[p]][first] == 0) ++first;
            if (std::find(comp.begin(), comp.end(), first) != comp.end()) e = add(e, scale((*coords)[p], W[p]));
        }
        for (int i : comp) h = add(h, scale(Scalar(d[i]), cs.gens.c[i]));
        CanonicalOrder co = canonical_order(sub, eps, lam);
        CarrierRecord rec;
        rec.type = classify_cartan(co.cartan);
        rec.cartan = co.cartan;
        rec.eps = co.eps;
        rec.lambda = co.lambda;
        ChevalleyModel M = record_model(rec.cartan, rec.type);
        std::vector<Vec> ks, as, bs;
        for (int p : co.perm) {
            ks.push_back(cs.gens.c[comp[p]]);
            as.push_back(cs.gens.a[comp[p]]);
            bs.push_back(cs.gens.b[comp[p]]);
        }
        LinMap chi = extend_generators(M, L, ks, as, bs);
        if (!is_homomorphism(M.L, L, chi)) throw CarrierDbError("component generators do not define an embedding");
        auto pull = [&](const Vec& v) {
            auto c = coordinates(chi.cols, v);
            if (!c) throw CarrierDbError("triple component outside the carrier component");
            return *c;
        };
        rec.table = M.L;
        rec.generators = standard_generators(M);
        rec.triple = Sl2Triple{pull(F.sigma(e)), pull(h), pull(e), TripleKind::ComplexCayley};
        if (std::string err = validate_record(rec); !err.empty()) throw CarrierDbError("derived record invalid: " + err);
        out.push_back(std::move(rec));
    }
    return out;
}

TransferResult transfer_triple(const CarrierRecord& r, const RealForm& F, const IntMat& cartan, const GeneratorTriple& gens,
                               const std::vector<Scalar>& lambda, const std::vector<int>& eps) {
    std::vector<int> signs;
    for (const auto& l : lambda) signs.push_back(sign_of(l));
    CanonicalOrder co = canonical_order(cartan, eps, signs);
    if (co.cartan != r.cartan) throw CarrierDbError("Cartan matrices differ");
    if (co.lambda != r.lambda) throw CarrierDbError("signs of lambda differ");
    if (co.eps != r.eps) throw CarrierDbError("degrees differ");
    ChevalleyModel M = record_model(r.cartan, r.type);
    const LieAlgebra& L = F.model->L;
    TransferResult out;
    std::vector<Vec> ks, as, bs;
    for (std::size_t i = 0; i < co.perm.size(); ++i) {
        int t = co.perm[i];
        mpq_class ratio = mpq_class(r.lambda[i]) / lambda[t].rational_value();
        Scalar mu = Scalar::sqrt_rational(ratio);
        out.mu.push_back(mu);
        ks.push_back(gens.c[t]);
        as.push_back(scale(mu, gens.a[t]));
        bs.push_back(scale(mu.inverse(), gens.b[t]));
    }
    out.phi = extend_generators(M, L, ks, as, bs);
    if (!is_homomorphism(M.L, L, out.phi)) throw CarrierDbError("transfer map is not a homomorphism");
    LinMap sr = record_sigma(r);
    GeneratorTriple g = standard_generators(M);
    for (std::size_t i = 0; i < g.a.size(); ++i)
        for (const Vec* v : {&g.c[i], &g.a[i], &g.b[i]})
            if (out.phi(sr(*v)) != F.sigma(out.phi(*v))) throw CarrierDbError("phi o sigma != sigma' o phi on a generator");
    out.triple = Sl2Triple{out.phi(r.triple.f), out.phi(r.triple.h), out.phi(r.triple.e), TripleKind::ComplexCayley};
    if (std::string err = check_triple(F, out.triple); !err.empty()) throw CarrierDbError("transferred triple invalid: " + err);
    return out;
}

CarrierDb::CarrierDb(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path CarrierDb::file_for(const std::string& key) const { return dir_ / (key + ".carrier"); }

bool CarrierDb::contains(const std::string& key) const { return std::filesystem::exists(file_for(key)); }

std::string CarrierDb::store(const CarrierRecord& r) const {
    if (std::string err = validate_record(r); !err.empty()) throw CarrierDbError("invalid record: " + err);
    std::string key = r.key();
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw CarrierDbError("cannot create " + dir_.string() + ": " + ec.message());
    if (contains(key)) throw CarrierDbError("record " + key + " already present");
    std::ostringstream tid;
    tid << std::this_thread::get_id();
    std::filesystem::path tmp = dir_ / (key + ".tmp." + tid.str());
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw CarrierDbError("cannot write " + tmp.string());
        out << record_to_text(r);
        if (!out) throw CarrierDbError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, file_for(key), ec);
    if (ec) throw CarrierDbError("cannot rename " + tmp.string() + ": " + ec.message());
    return key;
}

CarrierRecord CarrierDb::load(const std::string& key) const {
    std::ifstream in(file_for(key), std::ios::binary);
    if (!in) throw CarrierDbError("cannot read " + file_for(key).string());
    std::ostringstream ss;
    ss << in.rdbuf();
    CarrierRecord r = record_from_text(ss.str());
    if (r.key() != key) throw CarrierDbError("record key " + r.key() + " does not match file " + key);
    return r;
}

std::vector<std::string> CarrierDb::list() const {
    std::vector<std::string> keys;
    std::error_code ec;
    if (!std::filesystem::is_directory(dir_, ec)) return keys;
    for (const auto& entry : std::filesystem::directory_iterator(dir_))
        if (entry.path().extension() == ".carrier") keys.push_back(entry.path().stem().string());
    std::sort(keys.begin(), keys.end());
    return keys;
}

std::optional<CarrierRecord> CarrierDb::lookup(const IntMat& cartan, const std::vector<Scalar>& lambda,
                                               const std::vector<int>& eps) const {
    std::vector<int> signs;
    for (const auto& l : lambda) signs.push_back(sign_of(l));
    std::string type;
    try {
        type = classify_cartan(cartan);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    std::string key = record_key(type, canonical_order(cartan, eps, signs));
    if (!contains(key)) return std::nullopt;
    return load(key);
}

CarrierLookup make_db_lookup(const CarrierDb& db) {
    return [&db](const RealForm& F, const CarrierSystem& cs, const CarrierAlgebra& s) -> std::optional<Sl2Triple> {
        const LieAlgebra& L = F.model->L;
        auto d = defining_coefficients(s.cartan_matrix, s.degrees);
        Vec x(L.dim());
        for (const auto& comp : cartan_components(s.cartan_matrix)) {
            std::size_t r = comp.size();
            bool principal = true;
            for (int i : comp) principal = principal && s.degrees[i] == 1;
            if (principal) {
                for (int i : comp) x = add(x, scale(Scalar::sqrt_rational(d[i]), cs.system.w[cs.model->R.simple(i)]));
                continue;
            }
            IntMat sub(r, std::vector<int>(r));
            std::vector<int> eps;
            std::vector<Scalar> lam;
            GeneratorTriple g;
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t j = 0; j < r; ++j) sub[i][j] = s.cartan_matrix[comp[i]][comp[j]];
                eps.push_back(s.degrees[comp[i]]);
                lam.push_back(cs.lambda[comp[i]]);
                g.c.push_back(cs.gens.c[comp[i]]);
                g.a.push_back(cs.gens.a[comp[i]]);
                g.b.push_back(cs.gens.b[comp[i]]);
            }
            auto rec = db.lookup(sub, lam, eps);
            if (!rec) return std::nullopt;
            x = add(x, transfer_triple(*rec, F, sub, g, lam, eps).triple.e);
        }
        return Sl2Triple{F.sigma(x), scale(Scalar(2), s.defining), x, TripleKind::ComplexCayley};
    };
}

}  // namespace lieks
