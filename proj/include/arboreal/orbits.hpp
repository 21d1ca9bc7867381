#pragma once

#include "arboreal/tree.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace arboreal {

/**
 * Orbit invariant of an aligned tuple with distinct entries.
 *
 * `gaps` are the consecutive distances between the coordinates in the order
 * they appear along their spine. Of the two orientations of the spine, the
 * one with the lexicographically smaller (type_bit, gaps) is kept; reading
 * the spine backwards flips the type bit by the parity of the total length.
 * Only (type_bit, gaps) takes part in comparisons.
 *
 * `sort_sign` is the sign of the permutation listing the tuple in canonical
 * spine order. For a self-symmetric class whose two orientations give
 * opposite signs it is 0: the reversing symmetry negates the chain.
 */
struct AlignedSignature {
    int type_bit = 0;  // always 0 when type is ignored
    std::vector<int> gaps;
    int sort_sign = 1;

    auto key() const { return std::tie(type_bit, gaps); }
    friend bool operator==(const AlignedSignature& a, const AlignedSignature& b) { return a.key() == b.key(); }
    friend auto operator<=>(const AlignedSignature& a, const AlignedSignature& b) { return a.key() <=> b.key(); }
};

std::string format_signature(const AlignedSignature& s, bool type_preserving);

/// Throws std::invalid_argument when x is not aligned or has repeated entries.
AlignedSignature aligned_signature(const Tree& t, std::span<const Vertex> x, bool type_preserving);

/// Coordinates of an aligned, distinct-entry tuple listed along the spine,
/// starting from the extremity with the smaller id.
VertexTuple spine_order(const Tree& t, std::span<const Vertex> x);

enum class WitnessOutcome { found, signature_mismatch, ball_too_small };

struct OrbitWitness {
    WitnessOutcome outcome = WitnessOutcome::signature_mismatch;
    std::optional<PartialIsometry> isometry;
    // g(x) equals chain_sign * y as alternating chains.
    int chain_sign = 0;
};

/**
 * Builds a partial isometry carrying the point set of x onto that of y,
 * matching them in spine order (either orientation), and extends it to every
 * vertex within `slack` of the hull of x. Distances and, when requested, the
 * bipartition are checked directly rather than through signatures.
 */
OrbitWitness orbit_witness(const Tree& t, std::span<const Vertex> x, std::span<const Vertex> y,
                           bool type_preserving, int slack = 1);

struct OrbitClassRow {
    AlignedSignature signature;
    std::size_t class_size = 0;
    bool witness_verified = false;  // the class is exactly one witnessed orbit
};

struct OrbitReport {
    int degree = 0;
    int diameter_cap = 0;
    bool type_preserving = true;
    int anchor_radius = 0;
    std::size_t tuples = 0;
    std::size_t signature_classes = 0;
    std::size_t witnessed_orbits = 0;
    std::size_t pair_checks = 0;
    std::size_t pair_failures = 0;
    std::vector<OrbitClassRow> rows;

    bool ok() const;
};

struct OrbitSearchOptions {
    int slack = 1;
    int anchor_radius = -1;       // default: radius of the ball minus slack minus 1
    std::size_t max_tuples = 200'000;
    std::size_t max_pairs_per_class = 50'000;  // beyond this pairs are sampled
    std::uint64_t seed = 0;
};

/**
 * Enumerates aligned canonical (n+1)-tuples of diameter <= diameter_cap
 * inside the ball of `anchor_radius` around the root, groups them into
 * orbits by constructing witnesses against orbit representatives, and
 * compares the result with the grouping by signature. Within each signature
 * class every pair (or a seeded sample of pairs) is witnessed as well.
 */
OrbitReport count_orbits_vs_signatures(const Tree& ball, int degree, int diameter_cap, bool type_preserving,
                                       const OrbitSearchOptions& options = {});

}  // namespace arboreal
