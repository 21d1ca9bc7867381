#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace arboreal {

// Vertices are dense ids 0..size()-1; the total order on vertices is id order.
using Vertex = std::int32_t;
using VertexTuple = std::vector<Vertex>;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr std::size_t kDefaultVertexCap = 10'000;

/**
 * A finite simplicial tree. Immutable after construction; every query is a
 * pure function, so a Tree can be shared freely between threads.
 *
 * Construction roots the tree at vertex 0 and stores parent/depth arrays,
 * which turns distance, geodesic and projection queries into ancestor walks.
 */
class Tree {
public:
    /// Validates an edge list over the contiguous id range 0..n-1. An empty
    /// list is the single-vertex tree. Throws InvalidTree naming the problem.
    static Tree from_edges(std::span<const Edge> edges);

    std::size_t size() const { return adjacency_.size(); }
    std::span<const Vertex> neighbors(Vertex v) const;
    std::size_t degree(Vertex v) const { return neighbors(v).size(); }
    std::vector<Edge> edges() const;
    bool contains(Vertex v) const { return v >= 0 && static_cast<std::size_t>(v) < size(); }

    int distance(Vertex u, Vertex v) const;
    std::vector<Vertex> geodesic(Vertex u, Vertex v) const;
    /// Nearest-point projection of w onto the segment [u, v]: the median of
    /// the three points.
    Vertex project_to_segment(Vertex w, Vertex u, Vertex v) const;

    // Bipartition class relative to vertex 0.
    int parity(Vertex v) const { return depth_.at(check(v)) & 1; }
    int depth(Vertex v) const { return depth_.at(check(v)); }
    /// Vertices at distance <= radius from v, ascending ids.
    std::vector<Vertex> ball(Vertex v, int radius) const;

    friend bool operator==(const Tree& a, const Tree& b) { return a.adjacency_ == b.adjacency_; }

private:
    explicit Tree(std::vector<std::vector<Vertex>> adjacency);
    std::size_t check(Vertex v) const;
    Vertex lca(Vertex u, Vertex v) const;

    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<Vertex> parent_;
    std::vector<int> depth_;
};

Tree build_tree(std::span<const Edge> edges);

/// Ball of the given radius around the root (vertex 0) in the regular tree of
/// degree `branching`; vertices are numbered in breadth-first order.
Tree gen_regular_ball(int branching, int radius, std::size_t vertex_cap = kDefaultVertexCap);

/// Uniform random labelled tree on n vertices via a Prüfer sequence.
Tree gen_random_tree(std::size_t n, std::uint64_t seed);

/// Decodes a Prüfer sequence of length n-2 over ids 0..n-1.
Tree tree_from_pruefer(std::span<const Vertex> sequence);

Tree path_tree(std::size_t n);

// Edge-list text: one edge per line, two whitespace-separated decimal ids,
// '#' starts a comment. A file with no edges is the single-vertex tree.
Tree parse_edge_list(std::istream& in);
Tree read_edge_list_file(const std::string& path);
std::string format_edge_list(const Tree& t);

struct ConvexHull {
    std::vector<Vertex> vertices;  // ascending
    std::vector<Vertex> leaves;    // ascending; a singleton hull is its own leaf
};

ConvexHull convex_hull(const Tree& t, std::span<const Vertex> x);
bool is_aligned(const Tree& t, std::span<const Vertex> x);

/**
 * Injective partial map between vertices of one tree preserving all pairwise
 * distances on its domain. Stands in for a tree automorphism restricted to a
 * finite region.
 */
class PartialIsometry {
public:
    PartialIsometry() = default;
    explicit PartialIsometry(std::map<Vertex, Vertex> mapping) : mapping_(std::move(mapping)) {}

    static PartialIsometry identity(std::span<const Vertex> domain);

    const std::map<Vertex, Vertex>& mapping() const { return mapping_; }
    bool defined_on(Vertex v) const { return mapping_.contains(v); }
    bool defined_on(std::span<const Vertex> vs) const;
    Vertex operator()(Vertex v) const;
    VertexTuple apply(std::span<const Vertex> x) const;
    std::size_t size() const { return mapping_.size(); }

    /// True when injective and distance-preserving on the domain in t.
    bool is_valid(const Tree& t) const;
    /// Even displacement, i.e. the map preserves the bipartition of t.
    bool is_type_preserving(const Tree& t) const;

    friend bool operator==(const PartialIsometry&, const PartialIsometry&) = default;

private:
    std::map<Vertex, Vertex> mapping_;
};

/**
 * Extends `seed` to a partial isometry defined on every vertex of `targets`.
 *
 * The seed is first closed under geodesics (images of segment interiors are
 * forced), then grown breadth-first; each new vertex goes to the lowest-id
 * free neighbour of its parent's image. Returns nullopt when some image has
 * too few free neighbours. Throws std::invalid_argument for an invalid or
 * empty seed.
 */
std::optional<PartialIsometry> extend_partial_isometry(const Tree& t, const PartialIsometry& seed,
                                                       std::span<const Vertex> targets);

// Portable bounded draw in [0, n); std distributions differ between
// standard libraries and reports must be reproducible.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n);

}  // namespace arboreal
