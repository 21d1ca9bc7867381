// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include "arboreal/aligned.hpp"
#include "arboreal/flatmate.hpp"
#include "arboreal/homology.hpp"
#include "arboreal/orbits.hpp"
#include "support/cli_runner.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace arboreal;

namespace {

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& what) {
        if (!condition && passed) detail << "failed: " << what << "; ";
        passed = passed && condition;
    }
};

Tree tripod() { return build_tree(std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}}); }

std::vector<Tree> random_trees(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Tree> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(gen_random_tree(10 + uniform_index(rng, 51), rng()));
    return out;
}

Outcome chain_map() {
    Outcome o;
    auto trees = random_trees(20, 101);
    trees.push_back(gen_regular_ball(3, 4));
    trees.push_back(gen_regular_ball(4, 4));
    std::size_t tuples = 0;
    std::mt19937_64 rng(5);
    for (std::size_t k = 0; k < trees.size(); ++k) {
        for (int n = 2; n <= 5; ++n) {
            const auto r = verify_chain_map(trees[k], n, 500, 1000 * k + static_cast<std::uint64_t>(n));
            o.require(r.samples == 500 && r.ok(), "chain map on tree " + std::to_string(k) + " degree " + std::to_string(n));
            tuples += r.samples;
            // phi itself against the naive sum over all index pairs
            for (int s = 0; s < 10; ++s) {
                const auto x = sample_tuple(trees[k], static_cast<std::size_t>(n) + 1, rng);
                o.require(phi_tuple(trees[k], x) == oracle::naive_phi_tuple(trees[k], x), "phi against naive sum");
            }
        }
    }
    o.detail << trees.size() << " trees, " << tuples << " tuples, degrees 2..5";
    return o;
}

Outcome projection() {
    Outcome o;
    const std::vector<Tree> trees{gen_regular_ball(3, 4), gen_random_tree(50, 7), gen_random_tree(35, 8)};
    std::mt19937_64 rng(11);
    std::size_t chains = 0;
    for (int trial = 0; trial < 240; ++trial) {
        const Tree& t = trees[static_cast<std::size_t>(trial) % trees.size()];
        const int degree = 1 + trial % 5;
        AltChain c(degree);
        for (int k = 0; k < 5; ++k) {
            c.add_term(sample_tuple(t, static_cast<std::size_t>(degree) + 1, rng),
                       static_cast<int>(uniform_index(rng, 11)) - 5);
        }
        const AltChain image = phi(t, c);
        o.require(phi(t, image) == image, "phi is idempotent");
        for (const auto& [x, coeff] : image.terms()) o.require(oracle::aligned_by_pairs(t, x), "image is aligned");
        o.require(is_integral(image), "integral coefficients");
        ++chains;
    }
    o.detail << chains << " random integer chains";
    return o;
}

Outcome norms() {
    Outcome o;
    auto trees = random_trees(6, 303);
    trees.push_back(gen_regular_ball(3, 4));
    trees.push_back(gen_regular_ball(4, 3));
    Rational worst = 0, worst_standard = 0;
    std::size_t standard = 0;
    std::mt19937_64 rng(9);
    for (std::size_t k = 0; k < trees.size(); ++k) {
        for (int n = 2; n <= 5; ++n) {
            const auto s = phi_norm_scan(trees[k], n, 400, 7 * k + static_cast<std::uint64_t>(n));
            o.require(s.ok(), "norm bounds on tree " + std::to_string(k));
            worst = std::max(worst, s.max_norm);
            worst_standard = std::max(worst_standard, s.max_standard_norm);
            standard += s.standard_samples;
            const Rational bound = Rational((n + 1) * (n + 2), 2);
            for (int j = 0; j < 20; ++j) {
                const auto x = sample_tuple(trees[k], static_cast<std::size_t>(n) + 1, rng);
                o.require(l1_norm(oracle::naive_phi_tuple(trees[k], x)) <= bound, "naive norm bound");
            }
        }
    }
    const Rational tripod_norm = l1_norm(phi_tuple(tripod(), std::vector<Vertex>{1, 2, 3}));
    o.require(tripod_norm == 3, "tripod norm is 3");
    o.require(phi_norm_scan(tripod(), 2, 20, 1).max_norm == 3, "tripod scan");
    o.detail << "max norm " << worst << ", max on " << standard << " standard configurations " << worst_standard
             << ", tripod " << tripod_norm;
    return o;
}

Outcome pate_identities() {
    Outcome o;
    std::size_t minimum = std::numeric_limits<std::size_t>::max();
    for (const Tree& t : {gen_regular_ball(3, 5), gen_random_tree(60, 12)}) {
        for (const auto& r : verify_pate_identities(t, 250, 77)) {
            o.require(r.ok(), r.check);
            minimum = std::min(minimum, r.samples);
        }
    }
    o.require(minimum >= 200, "at least 200 instances per identity");
    o.detail << "4 identities (u-cocycle, v-cocycle, all faces, phi rewrite), >= " << minimum << " instances each per tree";
    return o;
}

Outcome exactness() {
    Outcome o;
    for (std::size_t n = 1; n <= 7; ++n) {
        for (const auto& r : verify_exactness(all_vertices(n), 3)) o.require(r.exact, "full complex on " + std::to_string(n));
    }
    std::size_t trees = 0;
    for (std::size_t n = 1; n <= 12; ++n) {
        for (const Tree& t : oracle::all_unlabeled_trees(n)) {
            for (const auto& r : verify_exactness(all_vertices(t.size()), 3, aligned_membership(t))) {
                o.require(r.exact, "aligned complex on a tree with " + std::to_string(n) + " vertices");
            }
            ++trees;
        }
    }
    o.require(trees == 987, "all 987 trees up to 12 vertices");
    o.detail << "full complex on 1..7 points and aligned complex on " << trees << " trees, degrees 0..3";
    return o;
}

Outcome naturality() {
    Outcome o;
    const Tree b = gen_regular_ball(3, 6);
    const auto region = b.ball(0, 2);
    const auto centres = b.ball(0, 3);
    std::mt19937_64 rng(44);
    std::set<std::map<Vertex, Vertex>> seen;
    std::size_t isometries = 0, checks = 0;
    for (int attempt = 0; attempt < 400 && seen.size() < 60; ++attempt) {
        const Vertex c = centres[uniform_index(rng, centres.size())];
        auto nbrs = b.neighbors(c);
        std::vector<Vertex> image(nbrs.begin(), nbrs.end());
        std::shuffle(image.begin(), image.end(), rng);
        const auto g = extend_partial_isometry(
            b, PartialIsometry(std::map<Vertex, Vertex>{{0, c}, {1, image[0]}, {2, image[1]}, {3, image[2]}}), region);
        if (!g || !seen.insert(g->mapping()).second) continue;
        o.require(g->is_valid(b), "constructed map is an isometry");
        ++isometries;
        for (int s = 0; s < 20; ++s) {
            VertexTuple x;
            const auto len = 3 + uniform_index(rng, 3);
            while (x.size() < len) {
                const Vertex v = region[uniform_index(rng, region.size())];
                if (std::find(x.begin(), x.end(), v) == x.end()) x.push_back(v);
            }
            const auto hull = convex_hull(b, x);
            if (!g->defined_on(hull.vertices)) continue;
            const AltChain c1 = AltChain::basis(x);
            o.require(phi(b, push_forward(c1, *g)) == push_forward(phi(b, c1), *g), "phi commutes with g");
            ++checks;
        }
    }
    o.require(isometries >= 50, "at least 50 isometries");
    o.detail << isometries << " distinct isometries, " << checks << " tuples";
    return o;
}

std::size_t burnside_classes(int degree, int cap, bool typed) {
    if (degree == 0) return typed ? 2 : 1;
    std::size_t elements = 0, fixed = 0;
    std::vector<int> gaps;
    std::function<void(int)> grow = [&](int left) {
        if (static_cast<int>(gaps.size()) == degree) {
            const bool palindrome = std::equal(gaps.begin(), gaps.end(), gaps.rbegin());
            const std::size_t types = typed ? 2 : 1;
            elements += types;
            if (palindrome && (!typed || (cap - left) % 2 == 0)) fixed += types;
            return;
        }
        for (int g = 1; g <= left; ++g) {
            gaps.push_back(g);
            grow(left - g);
            gaps.pop_back();
        }
    };
    grow(cap);
    return (elements + fixed) / 2;
}

Outcome orbits() {
    Outcome o;
    const Tree b = gen_regular_ball(3, 6);
    for (int n : {1, 2}) {
        for (bool typed : {true, false}) {
            const auto r = count_orbits_vs_signatures(b, n, 4, typed);
            const std::string label = std::string(typed ? "typed" : "full") + " n=" + std::to_string(n);
            o.require(r.ok(), label);
            o.require(r.signature_classes == r.witnessed_orbits, label + " classes = orbits");
            o.require(r.signature_classes == burnside_classes(n, 4, typed), label + " class count");
            o.require(r.pair_failures == 0, label + " pair witnesses");
            o.detail << label << ": " << r.signature_classes << " classes, " << r.pair_checks << " pairs; ";
        }
    }
    return o;
}

Outcome flatmate() {
    Outcome o;
    std::vector<ProductComplex> family;
    for (std::size_t k = 3; k <= 8; ++k) family.emplace_back(path_tree(k), path_tree(k));
    const auto rows = homotopy_norm_probe(family, 1, 50, 2024);
    o.detail << "series";
    for (const auto& r : rows) {
        o.require(r.exact, r.instance + " exact");
        o.require(r.cycles_tested >= 50, r.instance + " samples");
        o.require(r.certificates_ok == r.cycles_tested, r.instance + " certificates");
        o.detail << " " << r.instance << ":" << (r.max_min_preimage_norm ? r.max_min_preimage_norm->str() : "-");
    }

    const std::vector<Tree> trees{tripod(), gen_random_tree(10, 3), gen_regular_ball(3, 2), path_tree(6)};
    for (const Tree& t : trees) o.require(trivial_factor_matches_aligned(t, 2), "trivial factor structure");

    // On tree x point, phi of a cone is an aligned preimage, so it bounds
    // the LP optimum from above.
    std::mt19937_64 rng(8);
    std::size_t cross = 0;
    for (const Tree& t : trees) {
        const ProductComplex p(t, Tree::from_edges({}));
        const auto data = flatmate_boundary_data(p, 1);
        for (int s = 0; s < 10; ++s) {
            AltChain c(2);
            for (int k = 0; k < 3; ++k) {
                c.add_term(data.columns.tuples[uniform_index(rng, data.columns.dimension())],
                           1 + static_cast<int>(uniform_index(rng, 3)));
            }
            AltChain z = boundary(c);
            if (z.is_zero()) continue;
            z *= 1 / l1_norm(z);
            AltChain cone(2);
            for (const auto& [x, coeff] : z.terms()) cone.add_term(VertexTuple{0, x[0], x[1]}, coeff);
            const AltChain aligned_preimage = phi(t, cone);
            o.require(boundary(aligned_preimage) == z, "phi of the cone is a preimage");
            const auto r = min_l1_preimage(data, z);
            o.require(r.status == PreimageStatus::solved && r.certificate_ok, "aligned preimage solved");
            o.require(r.norm <= l1_norm(aligned_preimage), "LP optimum below the phi bound");
            ++cross;
        }
    }
    o.detail << "; trivial-factor structure on " << trees.size() << " trees; phi-bound cross-check on " << cross
             << " cycles";
    return o;
}

Outcome determinism() {
    Outcome o;
    const auto dir = cli::scratch("acceptance-determinism");
    const std::vector<std::string> commands{
        "verify-exactness --regular 3 --radius 2 --aligned --nmax 3",
        "verify-chainmap --random 40 --seed 3 --samples 200",
        "verify-pate --regular 3 --radius 4 --samples 100 --seed 6",
        "norm-phi --regular 3 --radius 4 --samples 200 --seed 8",
        "orbit-report --regular 3 --radius 6 --degree 2 --diameter 4 --seed 2",
        "flatmate-probe --kmin 3 --kmax 5 --degree 1 --samples 10 --seed 4",
        "flatmate-probe --kmin 3 --kmax 4 --degree 1 --samples 10 --seed 4 --format csv"};
    for (const auto& c : commands) {
        const bool csv = c.find("csv") != std::string::npos;
        const auto a = dir / (csv ? "a.csv" : "a.json"), b = dir / (csv ? "b.csv" : "b.json");
        const auto ra = cli::run(c + " --out " + a.string());
        const auto rb = cli::run(c + " --out " + b.string());
        o.require(ra.exit_code == 0 && rb.exit_code == 0, c + " exit status");
        o.require(ra.stdout_text == rb.stdout_text, c + " summary line");
        if (csv) {
            auto strip = [](std::string text) { return text.substr(text.find('\n') + 1); };
            o.require(strip(cli::slurp(a)) == strip(cli::slurp(b)), c + " csv rows");
        } else {
            o.require(cli::payload(a) == cli::payload(b), c + " payload");
        }
    }
    o.detail << commands.size() << " commands run twice";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"chain map", chain_map},          {"projection and image", projection},
        {"norm bounds", norms},            {"pate identities", pate_identities},
        {"exactness", exactness},          {"naturality", naturality},
        {"orbits vs signatures", orbits},  {"flatmate probe", flatmate},
        {"determinism", determinism}};
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail << "exception: " << e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << k + 1 << " (" << criteria[k].first << "): "
                  << o.detail.str() << " [" << std::fixed << std::setprecision(1) << seconds << "s]" << std::endl;
        failures += !o.passed;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? 0 : 1;
}
