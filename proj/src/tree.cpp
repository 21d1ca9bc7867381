#include "arboreal/tree.hpp"

#include "arboreal/errors.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace arboreal {

namespace {

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

std::string edge_text(const Edge& e) {
    return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
}

}  // namespace

Tree::Tree(std::vector<std::vector<Vertex>> adjacency)
    : adjacency_(std::move(adjacency)), parent_(adjacency_.size(), -1), depth_(adjacency_.size(), 0) {
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
    std::deque<Vertex> queue{0};
    std::vector<bool> seen(adjacency_.size(), false);
    seen[0] = true;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : adjacency_[v]) {
            if (seen[w]) continue;
            seen[w] = true;
            parent_[w] = v;
            depth_[w] = depth_[v] + 1;
            queue.push_back(w);
        }
    }
}

Tree Tree::from_edges(std::span<const Edge> edges) {
    if (edges.empty()) return Tree(std::vector<std::vector<Vertex>>(1));

    Vertex max_id = -1;
    for (const auto& e : edges) {
        if (e.first < 0 || e.second < 0) throw InvalidTree("negative vertex id in edge " + edge_text(e));
        max_id = std::max({max_id, e.first, e.second});
    }
    const std::size_t n = static_cast<std::size_t>(max_id) + 1;

    std::set<Edge> seen;
    std::vector<bool> used(n, false);
    DisjointSets sets(n);
    for (const auto& e : edges) {
        if (e.first == e.second) throw InvalidTree("self-loop at vertex " + std::to_string(e.first));
        Edge key = std::minmax(e.first, e.second);
        if (!seen.insert(key).second) throw InvalidTree("duplicated edge " + edge_text(key));
        if (!sets.unite(e.first, e.second)) throw InvalidTree("cycle detected at edge " + edge_text(e));
        used[e.first] = used[e.second] = true;
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (!used[v]) throw InvalidTree("vertex ids not contiguous: " + std::to_string(v) + " is missing");
    }
    if (edges.size() != n - 1) throw InvalidTree("disconnected: " + std::to_string(n) + " vertices but " +
                                                 std::to_string(edges.size()) + " edges");

    std::vector<std::vector<Vertex>> adjacency(n);
    for (const auto& [a, b] : edges) {
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
    }
    return Tree(std::move(adjacency));
}

std::size_t Tree::check(Vertex v) const {
    if (!contains(v)) throw std::out_of_range("vertex id " + std::to_string(v) + " outside tree of size " +
                                              std::to_string(size()));
    return static_cast<std::size_t>(v);
}

std::span<const Vertex> Tree::neighbors(Vertex v) const { return adjacency_[check(v)]; }

std::vector<Edge> Tree::edges() const {
    std::vector<Edge> out;
    for (std::size_t v = 0; v < size(); ++v) {
        for (Vertex w : adjacency_[v]) {
            if (static_cast<Vertex>(v) < w) out.emplace_back(static_cast<Vertex>(v), w);
        }
    }
    return out;
}

Vertex Tree::lca(Vertex u, Vertex v) const {
    check(u);
    check(v);
    while (depth_[u] > depth_[v]) u = parent_[u];
    while (depth_[v] > depth_[u]) v = parent_[v];
    while (u != v) {
        u = parent_[u];
        v = parent_[v];
    }
    return u;
}

int Tree::distance(Vertex u, Vertex v) const { return depth_[u] + depth_[v] - 2 * depth_[lca(u, v)]; }

std::vector<Vertex> Tree::geodesic(Vertex u, Vertex v) const {
    const Vertex top = lca(u, v);
    std::vector<Vertex> head, tail;
    for (Vertex a = u; a != top; a = parent_[a]) head.push_back(a);
    for (Vertex b = v; b != top; b = parent_[b]) tail.push_back(b);
    head.push_back(top);
    head.insert(head.end(), tail.rbegin(), tail.rend());
    return head;
}

Vertex Tree::project_to_segment(Vertex w, Vertex u, Vertex v) const {
    // The median of three vertices is the deepest of their pairwise LCAs.
    const Vertex candidates[] = {lca(u, v), lca(u, w), lca(v, w)};
    return *std::max_element(std::begin(candidates), std::end(candidates),
                             [&](Vertex a, Vertex b) { return depth_[a] < depth_[b]; });
}

std::vector<Vertex> Tree::ball(Vertex v, int radius) const {
    std::vector<Vertex> out;
    std::vector<int> dist(size(), -1);
    std::deque<Vertex> queue{v};
    dist[check(v)] = 0;
    while (!queue.empty()) {
        Vertex a = queue.front();
        queue.pop_front();
        out.push_back(a);
        if (dist[a] == radius) continue;
        for (Vertex b : adjacency_[a]) {
            if (dist[b] >= 0) continue;
            dist[b] = dist[a] + 1;
            queue.push_back(b);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Tree build_tree(std::span<const Edge> edges) { return Tree::from_edges(edges); }

Tree gen_regular_ball(int branching, int radius, std::size_t vertex_cap) {
    if (branching < 3) throw std::invalid_argument("branching must be at least 3");
    if (radius < 0) throw std::invalid_argument("radius must be non-negative");

    // 1 + b * (1 + q + ... + q^(r-1)) with q = b - 1, checked against the cap as we go.
    std::size_t count = 1, ring = static_cast<std::size_t>(branching);
    for (int k = 0; k < radius; ++k) {
        count += ring;
        if (count > vertex_cap) {
            throw CapExceeded("regular ball (" + std::to_string(branching) + ", " + std::to_string(radius) +
                              ") exceeds the vertex cap " + std::to_string(vertex_cap));
        }
        ring *= static_cast<std::size_t>(branching - 1);
    }

    std::vector<Edge> edges;
    std::vector<Vertex> frontier{0};
    Vertex next = 1;
    for (int level = 0; level < radius; ++level) {
        std::vector<Vertex> ring_vertices;
        for (Vertex v : frontier) {
            const int children = (level == 0) ? branching : branching - 1;
            for (int c = 0; c < children; ++c) {
                edges.emplace_back(v, next);
                ring_vertices.push_back(next++);
            }
        }
        frontier = std::move(ring_vertices);
    }
    return Tree::from_edges(edges);
}

Tree tree_from_pruefer(std::span<const Vertex> sequence) {
    const std::size_t n = sequence.size() + 2;
    std::vector<std::size_t> remaining(n, 1);
    for (Vertex s : sequence) {
        if (s < 0 || static_cast<std::size_t>(s) >= n) throw std::invalid_argument("Prüfer entry out of range");
        ++remaining[s];
    }
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
    for (std::size_t v = 0; v < n; ++v) {
        if (remaining[v] == 1) leaves.push(static_cast<Vertex>(v));
    }
    std::vector<Edge> edges;
    for (Vertex s : sequence) {
        Vertex leaf = leaves.top();
        leaves.pop();
        edges.emplace_back(leaf, s);
        if (--remaining[s] == 1) leaves.push(s);
    }
    Vertex a = leaves.top();
    leaves.pop();
    edges.emplace_back(a, leaves.top());
    return Tree::from_edges(edges);
}

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index over an empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return draw % n;
}

Tree gen_random_tree(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("a tree needs at least one vertex");
    if (n == 1) return Tree::from_edges({});
    if (n == 2) {
        const Edge e{0, 1};
        return Tree::from_edges(std::span(&e, 1));
    }
    std::mt19937_64 rng(seed);
    std::vector<Vertex> sequence(n - 2);
    for (auto& s : sequence) s = static_cast<Vertex>(uniform_index(rng, n));
    return tree_from_pruefer(sequence);
}

Tree path_tree(std::size_t n) {
    if (n == 0) throw std::invalid_argument("a tree needs at least one vertex");
    std::vector<Edge> edges;
    for (std::size_t v = 1; v < n; ++v) edges.emplace_back(static_cast<Vertex>(v - 1), static_cast<Vertex>(v));
    return Tree::from_edges(edges);
}

Tree parse_edge_list(std::istream& in) {
    std::vector<Edge> edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        long long a, b;
        if (!(fields >> a)) continue;
        std::string extra;
        if (!(fields >> b) || (fields >> extra)) {
            throw InvalidTree("line " + std::to_string(line_no) + ": expected two vertex ids");
        }
        if (a < 0 || b < 0 || a > std::numeric_limits<Vertex>::max() || b > std::numeric_limits<Vertex>::max()) {
            throw InvalidTree("line " + std::to_string(line_no) + ": vertex id out of range");
        }
        edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    }
    return Tree::from_edges(edges);
}

Tree read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidTree("cannot open tree file " + path);
    return parse_edge_list(in);
}

std::string format_edge_list(const Tree& t) {
    std::ostringstream out;
    out << "# " << t.size() << " vertices\n";
    for (const auto& [a, b] : t.edges()) out << a << ' ' << b << '\n';
    return out.str();
}

ConvexHull convex_hull(const Tree& t, std::span<const Vertex> x) {
    if (x.empty()) throw std::invalid_argument("convex hull of an empty tuple");
    std::set<Vertex> members;
    for (Vertex v : x) {
        for (Vertex w : t.geodesic(x.front(), v)) members.insert(w);
    }
    ConvexHull hull;
    hull.vertices.assign(members.begin(), members.end());
    for (Vertex v : hull.vertices) {
        const auto nbrs = t.neighbors(v);
        const auto inside = std::count_if(nbrs.begin(), nbrs.end(), [&](Vertex w) { return members.contains(w); });
        if (inside <= 1) hull.leaves.push_back(v);
    }
    return hull;
}

bool is_aligned(const Tree& t, std::span<const Vertex> x) {
    if (x.size() <= 2) {
        for (Vertex v : x) t.neighbors(v);  // validates ids
        return true;
    }
    return convex_hull(t, x).leaves.size() <= 2;
}

PartialIsometry PartialIsometry::identity(std::span<const Vertex> domain) {
    std::map<Vertex, Vertex> m;
    for (Vertex v : domain) m.emplace(v, v);
    return PartialIsometry(std::move(m));
}

bool PartialIsometry::defined_on(std::span<const Vertex> vs) const {
    return std::all_of(vs.begin(), vs.end(), [&](Vertex v) { return defined_on(v); });
}

Vertex PartialIsometry::operator()(Vertex v) const {
    auto it = mapping_.find(v);
    if (it == mapping_.end()) throw std::out_of_range("partial isometry undefined at vertex " + std::to_string(v));
    return it->second;
}

VertexTuple PartialIsometry::apply(std::span<const Vertex> x) const {
    VertexTuple out;
    out.reserve(x.size());
    for (Vertex v : x) out.push_back((*this)(v));
    return out;
}

bool PartialIsometry::is_valid(const Tree& t) const {
    std::set<Vertex> image;
    for (const auto& [from, to] : mapping_) {
        if (!t.contains(from) || !t.contains(to) || !image.insert(to).second) return false;
    }
    for (auto a = mapping_.begin(); a != mapping_.end(); ++a) {
        for (auto b = std::next(a); b != mapping_.end(); ++b) {
            if (t.distance(a->first, b->first) != t.distance(a->second, b->second)) return false;
        }
    }
    return true;
}

bool PartialIsometry::is_type_preserving(const Tree& t) const {
    return std::all_of(mapping_.begin(), mapping_.end(),
                       [&](const auto& kv) { return t.parity(kv.first) == t.parity(kv.second); });
}

std::optional<PartialIsometry> extend_partial_isometry(const Tree& t, const PartialIsometry& seed,
                                                       std::span<const Vertex> targets) {
    if (seed.size() == 0) throw std::invalid_argument("cannot extend an empty partial isometry");
    if (!seed.is_valid(t)) throw std::invalid_argument("seed is not a partial isometry of the tree");

    std::map<Vertex, Vertex> map = seed.mapping();
    std::set<Vertex> image;
    for (const auto& [from, to] : map) image.insert(to);

    // Close the domain under geodesics: interior points of segments are forced.
    const auto [anchor, anchor_image] = *map.begin();
    for (const auto& [from, to] : seed.mapping()) {
        const auto src = t.geodesic(anchor, from);
        const auto dst = t.geodesic(anchor_image, to);
        for (std::size_t k = 0; k < src.size(); ++k) {
            auto [it, fresh] = map.emplace(src[k], dst[k]);
            if (fresh) image.insert(dst[k]);
        }
    }

    // Only grow through the hull of domain and targets.
    VertexTuple needed_seed;
    for (const auto& [from, to] : map) needed_seed.push_back(from);
    needed_seed.insert(needed_seed.end(), targets.begin(), targets.end());
    const auto needed_hull = convex_hull(t, needed_seed).vertices;
    const std::set<Vertex> needed(needed_hull.begin(), needed_hull.end());

    std::deque<Vertex> queue;
    for (const auto& [from, to] : map) queue.push_back(from);
    while (!queue.empty()) {
        const Vertex m = queue.front();
        queue.pop_front();
        for (Vertex w : t.neighbors(m)) {
            if (map.contains(w) || !needed.contains(w)) continue;
            const auto candidates = t.neighbors(map.at(m));
            auto free = std::find_if(candidates.begin(), candidates.end(),
                                     [&](Vertex c) { return !image.contains(c); });
            if (free == candidates.end()) return std::nullopt;
            map.emplace(w, *free);
            image.insert(*free);
            queue.push_back(w);
        }
    }
    return PartialIsometry(std::move(map));
}

}  // namespace arboreal
