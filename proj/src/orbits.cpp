#include "arboreal/orbits.hpp"

#include "arboreal/chain.hpp"
#include "arboreal/homology.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace arboreal {

namespace {

void require_aligned_distinct(const Tree& t, std::span<const Vertex> x) {
    if (x.empty()) throw std::invalid_argument("empty tuple has no signature");
    if (canonicalize_tuple(x).sign == 0) throw std::invalid_argument("tuple has repeated entries");
    if (!is_aligned(t, x)) throw std::invalid_argument("tuple is not aligned");
}

// Sign of the permutation taking `from` to `to` (same entries, all distinct).
int relabel_sign(std::span<const Vertex> from, std::span<const Vertex> to) {
    return canonicalize_tuple(from).sign * canonicalize_tuple(to).sign;
}

int eccentricity_of_root(const Tree& t) {
    int ecc = 0;
    for (std::size_t v = 0; v < t.size(); ++v) ecc = std::max(ecc, t.depth(static_cast<Vertex>(v)));
    return ecc;
}

}  // namespace

std::string format_signature(const AlignedSignature& s, bool type_preserving) {
    std::ostringstream out;
    if (type_preserving) out << s.type_bit << ':';
    out << '[';
    for (std::size_t k = 0; k < s.gaps.size(); ++k) out << (k ? "," : "") << s.gaps[k];
    out << ']';
    return out.str();
}

VertexTuple spine_order(const Tree& t, std::span<const Vertex> x) {
    require_aligned_distinct(t, x);
    if (x.size() == 1) return {x[0]};
    const Vertex start = convex_hull(t, x).leaves.front();
    VertexTuple order(x.begin(), x.end());
    std::sort(order.begin(), order.end(),
              [&](Vertex a, Vertex b) { return t.distance(start, a) < t.distance(start, b); });
    return order;
}

AlignedSignature aligned_signature(const Tree& t, std::span<const Vertex> x, bool type_preserving) {
    const VertexTuple order = spine_order(t, x);
    AlignedSignature forward, reverse;
    for (std::size_t k = 1; k < order.size(); ++k) forward.gaps.push_back(t.distance(order[k - 1], order[k]));
    reverse.gaps.assign(forward.gaps.rbegin(), forward.gaps.rend());
    if (type_preserving) {
        forward.type_bit = t.parity(order.front());
        reverse.type_bit = t.parity(order.back());
    }
    forward.sort_sign = relabel_sign(x, order);
    const std::size_t m = order.size();
    const int reversal_sign = ((m * (m - 1) / 2) % 2 == 0) ? 1 : -1;
    reverse.sort_sign = forward.sort_sign * reversal_sign;

    if (forward < reverse) return forward;
    if (reverse < forward) return reverse;
    if (forward.sort_sign != reverse.sort_sign) forward.sort_sign = 0;
    return forward;
}

OrbitWitness orbit_witness(const Tree& t, std::span<const Vertex> x, std::span<const Vertex> y, bool type_preserving,
                           int slack) {
    if (x.size() != y.size()) throw std::invalid_argument("orbit_witness: tuples of different lengths");
    const VertexTuple xs = spine_order(t, x);
    const VertexTuple ys = spine_order(t, y);

    std::vector<Vertex> targets;
    {
        std::set<Vertex> near;
        for (Vertex v : convex_hull(t, x).vertices) {
            for (Vertex w : t.ball(v, slack)) near.insert(w);
        }
        targets.assign(near.begin(), near.end());
    }

    OrbitWitness result;
    const VertexTuple ys_reversed(ys.rbegin(), ys.rend());
    for (const VertexTuple* candidate : {&ys, &ys_reversed}) {
        std::map<Vertex, Vertex> seed;
        for (std::size_t k = 0; k < xs.size(); ++k) seed.emplace(xs[k], (*candidate)[k]);
        PartialIsometry g(std::move(seed));
        if (!g.is_valid(t) || (type_preserving && !g.is_type_preserving(t))) continue;
        auto extended = extend_partial_isometry(t, g, targets);
        if (!extended) {
            result.outcome = WitnessOutcome::ball_too_small;
            continue;
        }
        result.outcome = WitnessOutcome::found;
        result.chain_sign = relabel_sign(extended->apply(x), y);
        result.isometry = std::move(extended);
        return result;
    }
    return result;
}

bool OrbitReport::ok() const {
    return signature_classes == witnessed_orbits && pair_failures == 0 &&
           std::all_of(rows.begin(), rows.end(), [](const OrbitClassRow& r) { return r.witness_verified; });
}

OrbitReport count_orbits_vs_signatures(const Tree& ball, int degree, int diameter_cap, bool type_preserving,
                                       const OrbitSearchOptions& options) {
    if (degree < 0) throw std::invalid_argument("negative degree");
    OrbitReport report;
    report.degree = degree;
    report.diameter_cap = diameter_cap;
    report.type_preserving = type_preserving;
    report.anchor_radius =
        options.anchor_radius >= 0 ? options.anchor_radius : eccentricity_of_root(ball) - options.slack - 1;
    if (report.anchor_radius < 0) throw std::invalid_argument("ball too small for the requested slack");

    const auto anchor = ball.ball(0, report.anchor_radius);
    const TupleMembership member = [&](std::span<const Vertex> x) {
        for (std::size_t a = 0; a < x.size(); ++a) {
            for (std::size_t b = a + 1; b < x.size(); ++b) {
                if (ball.distance(x[a], x[b]) > diameter_cap) return false;
            }
        }
        return is_aligned(ball, x);
    };
    const auto tuples = enumerate_basis(anchor, degree, member, options.max_tuples).tuples;
    report.tuples = tuples.size();

    // Orbits from witnesses alone.
    std::vector<std::size_t> representatives;
    std::vector<std::size_t> orbit_of(tuples.size());
    for (std::size_t k = 0; k < tuples.size(); ++k) {
        bool placed = false;
        for (std::size_t o = 0; o < representatives.size() && !placed; ++o) {
            const auto w = orbit_witness(ball, tuples[representatives[o]], tuples[k], type_preserving, options.slack);
            if (w.outcome == WitnessOutcome::found) {
                orbit_of[k] = o;
                placed = true;
            }
        }
        if (!placed) {
            orbit_of[k] = representatives.size();
            representatives.push_back(k);
        }
    }
    report.witnessed_orbits = representatives.size();

    // Classes from signatures alone.
    std::map<AlignedSignature, std::vector<std::size_t>> classes;
    for (std::size_t k = 0; k < tuples.size(); ++k) {
        classes[aligned_signature(ball, tuples[k], type_preserving)].push_back(k);
    }
    report.signature_classes = classes.size();

    std::vector<std::size_t> orbit_sizes(representatives.size(), 0);
    for (std::size_t o : orbit_of) ++orbit_sizes[o];

    std::mt19937_64 rng(options.seed);
    for (const auto& [signature, members] : classes) {
        OrbitClassRow row{signature, members.size(), false};
        const std::size_t orbit = orbit_of[members.front()];
        row.witness_verified =
            orbit_sizes[orbit] == members.size() &&
            std::all_of(members.begin(), members.end(), [&](std::size_t k) { return orbit_of[k] == orbit; });

        const std::size_t m = members.size();
        const std::size_t all_pairs = m * (m - 1) / 2;
        auto check_pair = [&](std::size_t a, std::size_t b) {
            ++report.pair_checks;
            const auto w = orbit_witness(ball, tuples[members[a]], tuples[members[b]], type_preserving, options.slack);
            if (w.outcome != WitnessOutcome::found) {
                ++report.pair_failures;
                row.witness_verified = false;
            }
        };
        if (all_pairs <= options.max_pairs_per_class) {
            for (std::size_t a = 0; a < m; ++a) {
                for (std::size_t b = a + 1; b < m; ++b) check_pair(a, b);
            }
        } else {
            for (std::size_t s = 0; s < options.max_pairs_per_class; ++s) {
                const std::size_t a = uniform_index(rng, m);
                std::size_t b = uniform_index(rng, m - 1);
                if (b >= a) ++b;
                check_pair(a, b);
            }
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace arboreal
