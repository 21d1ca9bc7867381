#pragma once

#include "arboreal/chain.hpp"
#include "arboreal/homology.hpp"
#include "arboreal/lp.hpp"
#include "arboreal/tree.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace arboreal {

/**
 * Product of two trees. Product vertex (a, b) has id a * |second| + b, so id
 * order is the lexicographic order on pairs. An apartment is a product of
 * two maximal segments.
 */
class ProductComplex {
public:
    ProductComplex(Tree first, Tree second) : first_(std::move(first)), second_(std::move(second)) {}

    const Tree& first() const { return first_; }
    const Tree& second() const { return second_; }
    std::size_t size() const { return first_.size() * second_.size(); }
    Vertex id(Vertex a, Vertex b) const;
    std::pair<Vertex, Vertex> coordinates(Vertex v) const;
    std::string describe() const;

private:
    Tree first_;
    Tree second_;
};

/// Componentwise alignment: the first coordinates are aligned in the first
/// factor and the second coordinates in the second factor.
bool is_flatmate(const ProductComplex& p, std::span<const Vertex> x);
TupleMembership flatmate_membership(const ProductComplex& p);

std::vector<ExactnessRecord> flatmate_exactness(const ProductComplex& p, int n_max,
                                                std::size_t cap = kDefaultDimensionCap);

BoundaryData flatmate_boundary_data(const ProductComplex& p, int degree, std::size_t cap = kDefaultDimensionCap);

enum class PreimageStatus { solved, not_a_cycle, not_a_boundary };

struct PreimageResult {
    PreimageStatus status = PreimageStatus::not_a_boundary;
    AltChain preimage{0};
    Rational norm = 0;
    Rational dual_objective = 0;
    // Dual vector on the rows of the boundary data (zero outside the LP rows).
    std::vector<Rational> dual;
    // Independently re-checked: boundary(preimage) == z, |A^T y| <= 1 on every
    // column, and b.y == norm (or the Farkas conditions when not a boundary).
    bool certificate_ok = false;
    std::size_t rounds = 0;
    std::size_t columns_used = 0;
};

struct PreimageOptions {
    std::size_t basis_cap = kDefaultLpBasisCap;
    std::size_t columns_per_round = 32;
    // Optional vertex map r (r[v] for every vertex) fixing the vertices of z
    // and sending subcomplex tuples to subcomplex tuples or to repeats. The
    // LP is then started on the fixed points of r and its dual is pulled back
    // along r before pricing.
    std::vector<Vertex> retraction;
};

/**
 * Minimal l1-norm b with boundary(b) = z among the columns of `data`.
 *
 * The exact simplex runs on a restricted set of columns, grown by pricing
 * every column of `data` against the current dual until no column violates
 * dual feasibility. The final dual therefore certifies optimality over the
 * whole complex. When z is not a boundary, the phase-one dual is a Farkas
 * certificate.
 */
PreimageResult min_l1_preimage(const BoundaryData& data, const AltChain& z, const PreimageOptions& options = {});

/**
 * Vertex map of the product fixing `keep` that preserves flatmate tuples.
 * Each factor is projected onto the hull of its coordinates in `keep`, then
 * every chain of degree-2 hull vertices outside `keep` is collapsed onto one
 * of its ends. When both factors are paths every tuple is flatmate and all
 * other vertices go to the smallest kept vertex.
 */
std::vector<Vertex> flatmate_retraction(const ProductComplex& p, std::span<const Vertex> keep);

struct HomotopyNormReport {
    std::string instance;
    std::size_t factor1_size = 0;
    std::size_t factor2_size = 0;
    int degree = 0;
    std::uint64_t seed = 0;
    bool exact = false;          // flatmate complex exact at this degree
    std::vector<bool> exact_by_degree;  // degrees 0..degree
    std::size_t cycles_tested = 0;
    std::optional<Rational> max_min_preimage_norm;  // only when exact
    std::size_t certificates_ok = 0;
    bool suspicious_growth = false;  // ratio to the previous instance above the threshold
};

struct ProbeOptions {
    std::size_t chain_terms = 3;     // terms in each random (n+1)-chain
    int max_coefficient = 3;
    Rational growth_threshold = 2;   // flags ratio of consecutive maxima above this
    std::size_t cap = kDefaultDimensionCap;
    PreimageOptions lp;
};

/**
 * For each instance: confirms exactness at `degree`, draws unit-l1 cycles as
 * normalised boundaries of random flatmate (degree+1)-chains, and records the
 * largest minimal preimage norm. Deterministic in (family, degree, samples,
 * seed); instance k uses seed + k.
 */
std::vector<HomotopyNormReport> homotopy_norm_probe(const std::vector<ProductComplex>& family, int degree,
                                                    std::size_t samples, std::uint64_t seed,
                                                    const ProbeOptions& options = {});

/// True when the flatmate complex of tree x point and the aligned complex
/// of the tree have identical bases and boundary matrices in degrees 0..n_max.
bool trivial_factor_matches_aligned(const Tree& t, int n_max, std::size_t cap = kDefaultDimensionCap);

}  // namespace arboreal
