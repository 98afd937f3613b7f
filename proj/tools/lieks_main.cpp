#include "lieks/carrierdb.hpp"
#include "lieks/formid.hpp"
#include "lieks/isomorphism.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace lieks;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

FormId form_arg(const std::string& s) {
    try {
        return parse_form_id(s);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::string join_ints(const std::vector<int>& v, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

std::string signs(const std::vector<int>& v) {
    std::string s;
    for (int x : v) s += x > 0 ? '+' : '-';
    return s;
}

// Sparse sum over named basis vectors, "0" for the zero vector.
std::string sparse(const Vec& v, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k].is_zero()) continue;
        std::string c = v[k].str();
        bool wrap = c.find_first_of("+*i", 1) != std::string::npos;
        s += (s.empty() ? "" : " + ") + (wrap ? "(" + c + ")" : c) + "*" + names[k];
    }
    return s.empty() ? "0" : s;
}

std::vector<std::string> row(const Vec& v) {
    std::vector<std::string> out;
    for (const auto& c : v) out.push_back(c.str());
    return out;
}

std::string row_text(const Vec& v) {
    std::string s;
    for (const auto& c : v) s += (s.empty() ? "" : " ") + c.str();
    return s;
}

std::vector<std::string> real_names(const RealForm& F) {
    auto n = F.K_names;
    n.insert(n.end(), F.P_names.begin(), F.P_names.end());
    return n;
}

int cmd_forms(char letter, int rank) {
    if (!supported_type(letter, rank)) throw UsageError(std::string("unsupported type ") + letter + std::to_string(rank));
    auto M = make_model(letter, rank);
    for (const auto& s : enumerate_involutions(letter, rank)) {
        RealForm F = build_real_form(M, s);
        std::cout << s.id << "  " << s.label << "  dim k = " << F.dim_k() << ", dim p = " << F.dim_p() << "  killing ("
                  << F.killing.pos << "," << F.killing.neg << ")  lambda " << signs(s.lambda) << "  pi " << join_ints(s.pi)
                  << "\n";
    }
    return 0;
}

int cmd_orbits(const FormId& id) {
    RealForm F = build_form(id);
    OrbitCatalog cat = enumerate_orbits(F);
    const auto& names = F.model->L.names;
    std::cout << id.str() << " (" << F.spec.label << "): " << cat.entries.size() << " nonzero nilpotent orbits\n";
    for (std::size_t k = 0; k < cat.entries.size(); ++k) {
        const auto& s = cat.entries[k].carrier;
        std::cout << k + 1 << ". carrier " << s.type << "  graded dims [" << join_ints(s.graded_dims()) << "]  degrees ["
                  << join_ints(s.degrees) << "]  " << (s.principal ? "principal" : "non-principal") << "\n   defining "
                  << sparse(s.defining, names) << "\n";
    }
    return 0;
}

void dump_systems(const RealForm& F, const OrbitCatalog& cat, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    for (std::size_t k = 0; k < cat.entries.size(); ++k) {
        const auto& s = cat.entries[k].carrier;
        if (s.principal) continue;
        CarrierSystem cs = carrier_adapted_system(F, s);
        for (const auto& comp : cartan_components(s.cartan_matrix)) {
            CayleySystem sys = cayley_system(cs, s, comp);
            if (sys.variables.empty()) continue;
            os << "# orbit " << k + 1 << " carrier " << s.type << " component [" << join_ints(comp) << "]\n"
               << system_to_string(sys.system) << "\n";
        }
    }
}

int cmd_representatives(const FormId& id, bool as_json, const std::string& db_path, const std::string& dump, int jobs) {
    RealForm F = build_form(id);
    OrbitCatalog cat = enumerate_orbits(F);
    if (!dump.empty()) dump_systems(F, cat, dump);
    RepresentativeOptions opt;
    opt.jobs = jobs;
    std::optional<CarrierDb> db;
    if (!db_path.empty()) {
        db.emplace(db_path);
        opt.lookup = make_db_lookup(*db);
    }
    auto reps = real_orbit_representatives(F, cat, opt);
    int unresolved = 0, errors = 0;
    for (const auto& r : reps) {
        if (!r.error.empty()) ++errors;
        else if (!r.resolved()) ++unresolved;
    }
    auto names = real_names(F);
    if (as_json) {
        json out;
        out["form"] = id.str();
        out["label"] = F.spec.label;
        out["basis"] = names;
        out["orbits"] = json::array();
        for (const auto& r : reps) {
            json o;
            o["carrier"] = r.provenance.carrier_type;
            o["graded_dims"] = r.provenance.graded_dims;
            o["degrees"] = r.provenance.degrees;
            o["principal"] = r.provenance.principal;
            o["solver"] = r.provenance.solver;
            if (r.resolved()) {
                o["status"] = "ok";
                o["f"] = row(F.to_real(r.real_cayley->f));
                o["h"] = row(F.to_real(r.real_cayley->h));
                o["e"] = row(F.to_real(r.real_cayley->e));
            } else if (!r.error.empty()) {
                o["status"] = "error";
                o["error"] = r.error;
            } else {
                o["status"] = "UNRESOLVED";
                o["systems"] = json::array();
                for (const auto& s : r.unresolved_systems) o["systems"].push_back(system_to_string(s));
            }
            out["orbits"].push_back(o);
        }
        out["unresolved"] = unresolved;
        out["errors"] = errors;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << id.str() << " (" << F.spec.label << "): " << reps.size() << " real-Cayley representatives\n";
        std::cout << "basis ";
        for (std::size_t k = 0; k < names.size(); ++k) std::cout << (k ? " " : "") << names[k];
        std::cout << "\n";
        for (std::size_t k = 0; k < reps.size(); ++k) {
            const auto& r = reps[k];
            const auto& p = r.provenance;
            std::cout << k + 1 << ". carrier " << p.carrier_type << "  graded dims [" << join_ints(p.graded_dims) << "]  "
                      << (p.principal ? "principal" : "non-principal");
            if (r.resolved()) {
                std::cout << "  solver " << p.solver << "\n   f: " << row_text(F.to_real(r.real_cayley->f))
                          << "\n   h: " << row_text(F.to_real(r.real_cayley->h)) << "\n   e: " << row_text(F.to_real(r.real_cayley->e))
                          << "\n";
            } else if (!r.error.empty()) {
                std::cout << "  ERROR " << r.error << "\n";
            } else {
                std::cout << "  UNRESOLVED\n";
                for (const auto& s : r.unresolved_systems) std::cout << system_to_string(s) << "\n";
            }
        }
    }
    if (errors) return 1;
    return unresolved ? 2 : 0;
}

int cmd_iso(const FormId& a, const FormId& b) {
    RealForm Fa = build_form(a), Fb = build_form(b);
    IsomorphismResult r = isomorphism(Fa.structure(), Fb.structure());
    if (!r.isomorphic) {
        std::cout << "not isomorphic: " << r.reason << "\n";
        return 0;
    }
    const auto& na = Fa.model->L.names;
    const auto& nb = Fb.model->L.names;
    std::cout << "isomorphic (theta and sigma intertwined on all basis vectors)\n";
    std::cout << "standard parameters " << signs(r.state_a.lambda) << "\n";
    for (std::size_t i = 0; i < r.mu.size(); ++i) {
        std::cout << "h" << i + 1 << ": " << sparse(r.state_a.gens.c[i], na) << "  ->  " << sparse(r.images.c[i], nb) << "\n";
        std::cout << "x" << i + 1 << ": " << sparse(r.state_a.gens.a[i], na) << "  ->  " << sparse(r.images.a[i], nb) << "\n";
        std::cout << "y" << i + 1 << ": " << sparse(r.state_a.gens.b[i], na) << "  ->  " << sparse(r.images.b[i], nb) << "\n";
    }
    return 0;
}

int cmd_db_add(const std::string& path, const FormId& id, int jobs) {
    CarrierDb db(path);
    RealForm F = build_form(id);
    OrbitCatalog cat = enumerate_orbits(F);
    RepresentativeOptions opt;
    opt.jobs = jobs;
    auto reps = real_orbit_representatives(F, cat, opt);
    int added = 0, unresolved = 0;
    for (std::size_t k = 0; k < reps.size(); ++k) {
        const auto& s = cat.entries[k].carrier;
        if (s.principal) continue;
        if (!reps[k].complex_cayley) {
            ++unresolved;
            continue;
        }
        CarrierSystem cs = carrier_adapted_system(F, s);
        for (const auto& rec : make_records(F, cs, s, *reps[k].complex_cayley)) {
            std::string key = rec.key();
            if (db.contains(key)) {
                std::cout << "exists " << key << "\n";
                continue;
            }
            db.store(rec);
            ++added;
            std::cout << "added " << key << "\n";
        }
    }
    std::cout << added << " records added\n";
    return unresolved ? 2 : 0;
}

int cmd_db_find(const std::string& path, const FormId& id) {
    CarrierDb db(path);
    RealForm F = build_form(id);
    OrbitCatalog cat = enumerate_orbits(F);
    for (std::size_t k = 0; k < cat.entries.size(); ++k) {
        const auto& s = cat.entries[k].carrier;
        if (s.principal) continue;
        CarrierSystem cs = carrier_adapted_system(F, s);
        for (const auto& comp : cartan_components(s.cartan_matrix)) {
            IntMat c;
            std::vector<Scalar> lam;
            std::vector<int> eps;
            bool all_one = true;
            for (int i : comp) {
                std::vector<int> rowc;
                for (int j : comp) rowc.push_back(s.cartan_matrix[i][j]);
                c.push_back(rowc);
                lam.push_back(cs.lambda[i]);
                eps.push_back(cs.eps[i]);
                all_one = all_one && cs.eps[i] == 1;
            }
            if (all_one) continue;
            auto hit = db.lookup(c, lam, eps);
            std::cout << "orbit " << k + 1 << " component [" << join_ints(comp) << "]: " << (hit ? "found " + hit->key() : "missing")
                      << "\n";
        }
    }
    return 0;
}

int cmd_db_list(const std::string& path) {
    CarrierDb db(path);
    for (const auto& k : db.list()) std::cout << k << "\n";
    return 0;
}

int cmd_export_table(const FormId& id) {
    RealForm F = build_form(id);
    std::cout << F.table.table_text();
    return 0;
}

int cmd_verify(const FormId& id) {
    RealForm F = build_form(id);
    int bad = 0;
    std::string err = check_real_form(F);
    std::cout << "real form: " << (err.empty() ? "ok" : err) << "\n";
    bad += !err.empty();
    if (!F.spec.outer) {
        ChevalleySystem S = adapt_system_inner(F);
        ConjugationData cd = conjugation_data(F);
        err = check_adapted(S, cd, F.theta, F.sigma);
        std::cout << "adapted system of the algebra: " << (err.empty() ? "ok" : err) << "\n";
        bad += !err.empty();
    }
    OrbitCatalog cat = enumerate_orbits(F);
    for (std::size_t k = 0; k < cat.entries.size(); ++k) {
        const auto& s = cat.entries[k].carrier;
        try {
            CarrierSystem cs = carrier_adapted_system(F, s);
            err = check_adapted(cs.system, cs.data, F.theta, F.sigma);
            if (err.empty() && !sign_law_holds(*cs.model, cs.data)) err = "sign law fails on a simple root";
        } catch (const std::exception& e) {
            err = e.what();
        }
        std::cout << "carrier " << k + 1 << " (" << s.type << "): " << (err.empty() ? "ok" : err) << "\n";
        bad += !err.empty();
    }
    return bad ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Real forms, nilpotent orbit representatives and isomorphisms of small simple Lie algebras"};
    app.require_subcommand(1);
    int jobs = 1;
    app.add_option("--jobs", jobs, "Worker threads for per-orbit work")->check(CLI::PositiveNumber);
    const char* env_db = std::getenv("LIEKS_DB");
    std::string db_path = env_db ? env_db : "";

    char letter = 'A';
    int rank = 1;
    auto* forms = app.add_subcommand("forms", "List the real forms of a type");
    forms->add_option("--type", letter, "Type letter")->required();
    forms->add_option("--rank", rank, "Rank")->required();

    std::string form, form_pos;
    auto* orbits = app.add_subcommand("orbits", "Nilpotent orbit catalog of a real form");
    orbits->add_option("id", form_pos, "Form id");
    orbits->add_option("--form", form, "Form id");

    bool as_json = false, use_db = false;
    std::string dump;
    auto* reps = app.add_subcommand("representatives", "Real-Cayley representatives of every nilpotent orbit");
    reps->add_option("id", form_pos, "Form id");
    reps->add_option("--form", form, "Form id");
    reps->add_flag("--json", as_json, "JSON output");
    reps->add_flag("--db", use_db, "Look non-principal carriers up in the database");
    reps->add_option("--path", db_path, "Database directory (default $LIEKS_DB)");
    reps->add_option("--dump-systems", dump, "Write the Cayley polynomial systems to a file");

    std::string form_a, form_b;
    auto* iso = app.add_subcommand("iso", "Decide isomorphism of two real forms");
    iso->add_option("--form-a", form_a, "First form id")->required();
    iso->add_option("--form-b", form_b, "Second form id")->required();

    auto* db = app.add_subcommand("db", "Carrier database");
    db->require_subcommand(1);
    auto* db_add = db->add_subcommand("add", "Solve the non-principal carriers of a form and store them");
    auto* db_find = db->add_subcommand("find", "Look up the non-principal carriers of a form");
    auto* db_list = db->add_subcommand("list", "List stored keys");
    for (auto* sc : {db_add, db_find, db_list}) sc->add_option("--path", db_path, "Database directory (default $LIEKS_DB)");
    for (auto* sc : {db_add, db_find}) sc->add_option("--form", form, "Form id")->required();

    auto* table = app.add_subcommand("export-table", "Multiplication table over the real basis");
    table->add_option("--form", form, "Form id")->required();

    auto* verify = app.add_subcommand("verify", "Check the adapted Chevalley systems of a form");
    verify->add_option("--form", form, "Form id")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        auto chosen_form = [&] {
            std::string f = form.empty() ? form_pos : form;
            if (f.empty()) throw UsageError("a form id is required");
            return form_arg(f);
        };
        auto need_db = [&] {
            if (db_path.empty()) throw UsageError("no database path: pass --path or set LIEKS_DB");
        };
        if (*forms) return cmd_forms(letter, rank);
        if (*orbits) return cmd_orbits(chosen_form());
        if (*reps) {
            if (use_db) need_db();
            return cmd_representatives(chosen_form(), as_json, use_db ? db_path : "", dump, jobs);
        }
        if (*iso) return cmd_iso(form_arg(form_a), form_arg(form_b));
        if (*db) {
            need_db();
            if (*db_add) return cmd_db_add(db_path, chosen_form(), jobs);
            if (*db_find) return cmd_db_find(db_path, chosen_form());
            return cmd_db_list(db_path);
        }
        if (*table) return cmd_export_table(chosen_form());
        if (*verify) return cmd_verify(chosen_form());
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 64;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
