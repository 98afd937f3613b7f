#pragma once

#include "lieks/linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lieks {

using SparseRow = std::vector<std::pair<std::uint32_t, mpq_class>>;

// A finite-dimensional Lie algebra given by rational structure constants.
class LieAlgebra {
public:
    LieAlgebra() = default;
    explicit LieAlgebra(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::vector<std::string> names;

    // Sets [b_i, b_j] = row and [b_j, b_i] = -row.
    void set(std::size_t i, std::size_t j, SparseRow row);
    const SparseRow& entry(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }

    Vec bracket(const Vec& a, const Vec& b) const;
    QVec bracket(const QVec& a, const QVec& b) const;
    // Matrix of ad(x): column j holds [x, b_j].
    Mat ad(const Vec& x) const;
    QMat ad(const QVec& x) const;
    QMat killing() const;

    bool antisymmetric() const;
    // Exhaustive Jacobi identity on basis triples.
    bool jacobi() const;

    std::string table_text() const;  // one line per nonzero bracket, i < j

private:
    std::size_t dim_ = 0;
    std::vector<SparseRow> table_;
};

// Linear (or antilinear) map given by the images of basis vectors.
struct LinMap {
    std::vector<Vec> cols;
    bool antilinear = false;

    Vec operator()(const Vec& v) const;
    std::size_t src_dim() const { return cols.size(); }
};

LinMap identity_map(std::size_t n);
LinMap compose(const LinMap& a, const LinMap& b);  // a after b
LinMap inverse_map(const LinMap& m);
Mat to_matrix(const LinMap& m, std::size_t dst_dim);
bool maps_equal(const LinMap& a, const LinMap& b);
// Checks m([b_i,b_j]) = [m b_i, m b_j] on all basis pairs.
bool is_homomorphism(const LieAlgebra& src, const LieAlgebra& dst, const LinMap& m);

bool is_ad_nilpotent(const LieAlgebra& L, const Vec& x);
int nilpotency_index(const LieAlgebra& L, const Vec& x);  // least k with ad(x)^k = 0, or -1

}  // namespace lieks
