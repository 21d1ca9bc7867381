#pragma once

#include "arboreal/chain.hpp"
#include "arboreal/rational.hpp"
#include "arboreal/tree.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace arboreal {

/// The projection chain map on one tuple: the sum over index pairs i < j of
/// the tuple projected coordinatewise onto the segment [x_i, x_j].
/// Degrees 0 and 1 are the identity.
AltChain phi_tuple(const Tree& t, std::span<const Vertex> x);

/// Linear extension of phi_tuple. The result is supported on aligned tuples.
AltChain phi(const Tree& t, const AltChain& c);

using VertexPair = std::pair<Vertex, Vertex>;

struct PateArguments {
    VertexPair u;
    VertexTuple z;
    VertexPair v;
};

struct SignedTuple {
    VertexTuple tuple;
    int sign;
};

// -(u',z,v') + (u',z,v'') - (u'',z,v'') + (u'',z,v') as ordered tuples.
std::array<SignedTuple, 4> pate_terms(const PateArguments& args);
AltChain pate(const PateArguments& args);

/**
 * The caterpillar shape of T(x) seen from the pair (i, j): every x_k projects
 * to a distinct point of the spine [x_i, x_j]. Fields are listed in spine
 * order, i.e. after applying `renumbering` (renumbering[m] is the original
 * index of the m-th point along the spine, starting at x_i).
 */
struct StandardConfiguration {
    std::vector<std::size_t> renumbering;
    std::vector<int> spine_positions;   // distance from x_i, strictly increasing
    std::vector<int> hanging_lengths;   // distance from each point to its projection
    VertexTuple projections;            // the projected points, in spine order
};

std::optional<StandardConfiguration> detect_standard_configuration(const Tree& t, std::span<const Vertex> x,
                                                                   std::size_t i, std::size_t j);

/// True when x itself is laid out as a standard configuration for the pair
/// (0, n), with projections increasing in index order.
bool is_standard_ordered(const Tree& t, std::span<const Vertex> x);

// Outcome of a sampled identity check. Failures carry the offending tuple.
struct VerificationReport {
    std::string check;
    int degree = -1;
    std::size_t samples = 0;
    std::size_t passed = 0;
    std::optional<VertexTuple> counterexample;
    std::string detail;

    bool ok() const { return passed == samples; }
};

/// Distinct-entry random tuple of the given length; about half the draws are
/// taken from a small ball so that hulls are often branched.
VertexTuple sample_tuple(const Tree& t, std::size_t length, std::mt19937_64& rng);

/// Random tuple of length n+1 in standard order for the pair (0, n), or
/// nullopt when no geodesic in t is long enough.
std::optional<VertexTuple> sample_standard_configuration(const Tree& t, int n, std::mt19937_64& rng);

VerificationReport verify_chain_map(const Tree& t, int degree, std::size_t samples, std::uint64_t seed);

/// Checks the cocycle relation (and its v-side mirror), the face formula for
/// every face index, and the rewriting of phi on standard configurations.
std::vector<VerificationReport> verify_pate_identities(const Tree& t, std::size_t samples, std::uint64_t seed);

struct NormScan {
    int degree = 0;
    std::size_t samples = 0;
    Rational max_norm = 0;                // over all sampled tuples
    Rational max_standard_norm = 0;       // over tuples with a detected configuration
    std::size_t standard_samples = 0;
    std::size_t term_bound_violations = 0;   // norm > (n+1)(n+2)/2
    std::size_t standard_bound_violations = 0;  // norm > 4 on a configuration
    std::optional<VertexTuple> worst_tuple;

    bool ok() const { return term_bound_violations == 0 && standard_bound_violations == 0; }
};

NormScan phi_norm_scan(const Tree& t, int degree, std::size_t samples, std::uint64_t seed);

bool is_supported_on_aligned(const Tree& t, const AltChain& c);

}  // namespace arboreal
