#pragma once

#include "arboreal/chain.hpp"
#include "arboreal/rational.hpp"
#include "arboreal/tree.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace arboreal {

inline constexpr std::size_t kDefaultDimensionCap = 200'000;

// Membership of a canonical (strictly increasing) tuple in a subcomplex. It
// must be closed under taking subtuples, as the aligned and flatmate
// predicates are.
using TupleMembership = std::function<bool(std::span<const Vertex>)>;

/// Ordered basis of one chain space: canonical tuples in lexicographic order.
struct ChainBasis {
    int degree = 0;
    std::vector<VertexTuple> tuples;
    std::map<VertexTuple, std::size_t> index;

    std::size_t dimension() const { return tuples.size(); }
    std::optional<std::size_t> find(std::span<const Vertex> canonical) const;
};

/// Canonical (degree+1)-subsets of `vertices` accepted by `member` (all of
/// them when member is empty). Throws CapExceeded above `cap` tuples.
ChainBasis enumerate_basis(std::span<const Vertex> vertices, int degree, const TupleMembership& member,
                           std::size_t cap = kDefaultDimensionCap);

// Column-sparse rational matrix; entries in a column are sorted by row.
struct SparseMatrix {
    std::size_t rows = 0;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> columns;

    std::size_t cols() const { return columns.size(); }
    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;
};

/// Matrix of the boundary from `source` (degree n) to `target` (degree n-1).
/// Every face of a source tuple must be in the target basis.
SparseMatrix boundary_matrix(const ChainBasis& source, const ChainBasis& target);

/// Exact rank by column reduction over the rationals. When `known_bound` is
/// given and is a proven upper bound on the rank, reduction stops as soon as
/// it is reached.
std::size_t exact_rank(const SparseMatrix& m, std::optional<std::size_t> known_bound = std::nullopt);

struct ExactnessRecord {
    int degree = 0;
    std::size_t dimension = 0;       // dim of the degree-n chain space
    std::size_t image_rank = 0;      // rank of the boundary from degree n+1
    std::size_t kernel_dimension = 0;  // of the boundary (augmentation at n = 0)
    bool exact = false;              // kernel == image
};

/**
 * Checks exactness of the augmented complex spanned by `vertices` in degrees
 * 0..n_max, optionally restricted to the subcomplex selected by `member`.
 * All ranks are computed by exact rational elimination.
 */
std::vector<ExactnessRecord> verify_exactness(std::span<const Vertex> vertices, int n_max,
                                              const TupleMembership& member = {},
                                              std::size_t cap = kDefaultDimensionCap);

// The boundary from degree n+1 to degree n within one subcomplex, with both
// bases; the input format of the minimal-preimage solver.
struct BoundaryData {
    ChainBasis rows;     // degree n
    ChainBasis columns;  // degree n+1
    SparseMatrix matrix;
};

BoundaryData make_boundary_data(std::span<const Vertex> vertices, int degree, const TupleMembership& member,
                                std::size_t cap = kDefaultDimensionCap);

TupleMembership aligned_membership(const Tree& t);
std::vector<Vertex> all_vertices(std::size_t n);

}  // namespace arboreal
