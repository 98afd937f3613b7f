#pragma once

#include "lieks/cayley.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lieks {

struct CarrierDbError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A simple non-principal carrier algebra with a solved complex Cayley triple. Everything is expressed over
// the Chevalley basis of `cartan`; the canonical generators are that basis's (h_i, x_i, y_i) and
// sigma(x_i) = lambda_i y_i, sigma(h_i) = -h_i.
struct CarrierRecord {
    std::string type;
    IntMat cartan;
    std::vector<int> eps;
    std::vector<int> lambda;
    LieAlgebra table;
    GeneratorTriple generators;
    Sl2Triple triple;  // complex Cayley (f, h, e)

    std::string key() const;  // also the file stem
};

bool operator==(const CarrierRecord& a, const CarrierRecord& b);

// perm[i] = original index of canonical simple root i; minimizes (eps, C, lambda) lexicographically.
struct CanonicalOrder {
    std::vector<int> perm;
    IntMat cartan;
    std::vector<int> eps, lambda;
};
CanonicalOrder canonical_order(const IntMat& c, const std::vector<int>& eps, const std::vector<int>& lambda_signs);
std::string record_key(const std::string& type, const CanonicalOrder& co);

// sigma of a record, rebuilt from lambda.
LinMap record_sigma(const CarrierRecord& r);
// "" or the first violated invariant.
std::string validate_record(const CarrierRecord& r);

std::string record_to_text(const CarrierRecord& r);
// Parses and validates; throws CarrierDbError.
CarrierRecord record_from_text(const std::string& text);

// One record per non-principal simple component of s, given a complex Cayley triple in the ambient algebra.
std::vector<CarrierRecord> make_records(const RealForm& F, const CarrierSystem& cs, const CarrierAlgebra& s,
                                        const Sl2Triple& complex_triple);

struct TransferResult {
    Sl2Triple triple;        // complex Cayley in the target
    std::vector<Scalar> mu;  // per canonical index
    LinMap phi;              // record model -> ambient algebra of the target
};

// Maps the record's triple into a target carrier with canonical generators gens (target order), signs
// lambda (sigma(a_i) = lambda_i b_i) and degrees eps. Throws CarrierDbError if the match conditions fail.
TransferResult transfer_triple(const CarrierRecord& r, const RealForm& F, const IntMat& cartan, const GeneratorTriple& gens,
                               const std::vector<Scalar>& lambda, const std::vector<int>& eps);

// Directory of `<key>.carrier` files. Writes go through a temporary file and rename.
class CarrierDb {
public:
    explicit CarrierDb(std::filesystem::path dir);
    const std::filesystem::path& path() const { return dir_; }

    // Validates and writes; throws CarrierDbError on invalid or duplicate records. Returns the key.
    std::string store(const CarrierRecord& r) const;
    CarrierRecord load(const std::string& key) const;
    bool contains(const std::string& key) const;
    std::vector<std::string> list() const;
    // Match conditions: same Cartan matrix up to canonical reordering, equal signs of lambda, equal eps.
    std::optional<CarrierRecord> lookup(const IntMat& cartan, const std::vector<Scalar>& lambda, const std::vector<int>& eps) const;

private:
    std::filesystem::path dir_;
    std::filesystem::path file_for(const std::string& key) const;
};

// Resolves carriers whose non-principal simple components are all in the database.
CarrierLookup make_db_lookup(const CarrierDb& db);

}  // namespace lieks
