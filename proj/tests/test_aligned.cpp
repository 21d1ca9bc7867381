#include "arboreal/aligned.hpp"
#include "arboreal/homology.hpp"
#include "support/oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace arboreal;

namespace {

// center 0, leaves a=1, b=2, d=3
Tree tripod() { return build_tree(std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}}); }

// spine 0-1-2-3 with 4 hanging at 1 and 5 hanging at 2
Tree caterpillar() { return build_tree(std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {1, 4}, {2, 5}}); }

AltChain terms(int degree, std::initializer_list<std::pair<VertexTuple, int>> list) {
    AltChain c(degree);
    for (const auto& [x, k] : list) c.add_term(x, k);
    return c;
}

}  // namespace

TEST_CASE("phi fixes aligned tuples") {
    const Tree p = path_tree(6);
    CHECK(phi_tuple(p, std::vector<Vertex>{3, 0, 5, 1}) == AltChain::basis(std::vector<Vertex>{3, 0, 5, 1}));
    const Tree b = gen_regular_ball(3, 3);
    const VertexTuple x{4, 1, 0, 2, 7};  // along the geodesic 4-1-0-2-7
    REQUIRE(is_aligned(b, x));
    CHECK(phi_tuple(b, x) == AltChain::basis(x));
}

TEST_CASE("phi on the tripod") {
    const Tree t = tripod();
    const VertexTuple x{1, 2, 3};
    const AltChain expected = terms(2, {{{0, 2, 3}, 1}, {{1, 0, 3}, 1}, {{1, 2, 0}, 1}});
    CHECK(phi_tuple(t, x) == expected);
    CHECK(oracle::naive_phi_tuple(t, x) == expected);
    CHECK(boundary(phi_tuple(t, x)) == terms(1, {{{2, 3}, 1}, {{1, 3}, -1}, {{1, 2}, 1}}));
    CHECK(boundary(phi_tuple(t, x)) == boundary(AltChain::basis(x)));
    CHECK(l1_norm(phi_tuple(t, x)) == 3);
}

TEST_CASE("phi agrees with the naive sum over all index pairs") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const Tree t = gen_random_tree(18, static_cast<std::uint64_t>(trial % 9));
        const auto x = sample_tuple(t, 3 + uniform_index(rng, 3), rng);
        CHECK(phi_tuple(t, x) == oracle::naive_phi_tuple(t, x));
    }
}

TEST_CASE("chain map on a caterpillar") {
    const Tree t = caterpillar();
    const VertexTuple x{0, 4, 5, 3};
    const AltChain c = AltChain::basis(x);
    CHECK(boundary(phi(t, c)) == phi(t, boundary(c)));
    // both sides from the naive expansion
    AltChain lhs = boundary(oracle::naive_phi_tuple(t, x));
    AltChain rhs(2);
    for (std::size_t j = 0; j < x.size(); ++j) rhs.add(oracle::naive_phi_tuple(t, face_tuple(x, j)), j % 2 ? -1 : 1);
    CHECK(lhs == rhs);
    CHECK(verify_chain_map(t, 3, 200, 4).ok());
}

TEST_CASE("pate operator") {
    // u = (0,1), z = (2), v = (3,4)
    const PateArguments args{{0, 1}, {2}, {3, 4}};
    CHECK(pate(args) == terms(2, {{{0, 2, 3}, -1}, {{0, 2, 4}, 1}, {{1, 2, 4}, -1}, {{1, 2, 3}, 1}}));
    CHECK(pate({{5, 5}, {2}, {3, 4}}).is_zero());
    CHECK(pate({{0, 1}, {2}, {6, 6}}).is_zero());
    // inserting u''' = u' leaves the identity trivially true
    CHECK(pate(args) == pate({{0, 0}, {2}, {3, 4}}) + pate({{0, 1}, {2}, {3, 4}}));
}

TEST_CASE("pate face formula at the ends") {
    const PateArguments args{{0, 1}, {2, 5}, {3, 4}};
    for (std::size_t j : {std::size_t{0}, std::size_t{3}}) {
        AltChain sum(2);
        for (const auto& term : pate_terms(args)) sum.add_term(face_tuple(term.tuple, j), term.sign);
        CHECK(sum.is_zero());
    }
}

TEST_CASE("phi rewritten through the pate operator on a caterpillar") {
    const Tree t = caterpillar();
    const VertexTuple y{0, 4, 5, 3};
    REQUIRE(is_standard_ordered(t, y));
    const AltChain expected = terms(3, {{{0, 1, 2, 5}, -1}, {{0, 1, 2, 3}, 1}, {{4, 1, 2, 3}, -1}, {{4, 1, 2, 5}, 1}});
    CHECK(pate({{0, 4}, {1, 2}, {5, 3}}) == expected);
    CHECK(oracle::naive_phi_tuple(t, y) == expected);
    CHECK(phi_tuple(t, y) == expected);
    CHECK(l1_norm(expected) <= 4);
}

TEST_CASE("standard configurations") {
    const Tree p = path_tree(5);
    const VertexTuple x{0, 2, 4};
    const auto own = detect_standard_configuration(p, x, 0, 2);
    REQUIRE(own);
    CHECK(own->hanging_lengths == std::vector<int>{0, 0, 0});

    const Tree t = tripod();
    const auto cfg = detect_standard_configuration(t, std::vector<Vertex>{1, 2, 3}, 0, 1);
    REQUIRE(cfg);
    CHECK(cfg->renumbering == std::vector<std::size_t>{0, 2, 1});
    CHECK(cfg->projections == VertexTuple{1, 0, 2});
    CHECK(cfg->spine_positions == std::vector<int>{0, 1, 2});
    CHECK(cfg->hanging_lengths == std::vector<int>{0, 1, 0});
    // projections computed directly
    for (std::size_t m = 0; m < 3; ++m) {
        const Vertex w = VertexTuple{1, 2, 3}[cfg->renumbering[m]];
        CHECK(cfg->projections[m] == oracle::projection(t, w, 1, 2));
    }

    CHECK_FALSE(detect_standard_configuration(path_tree(3), std::vector<Vertex>{1, 0, 2}, 0, 1));
}

TEST_CASE("projection, support and integrality on random chains") {
    std::mt19937_64 rng(12);
    const Tree t = gen_regular_ball(3, 4);
    for (int trial = 0; trial < 50; ++trial) {
        const int degree = 2 + trial % 3;
        AltChain c(degree);
        for (int k = 0; k < 4; ++k) {
            c.add_term(sample_tuple(t, static_cast<std::size_t>(degree) + 1, rng),
                       static_cast<int>(uniform_index(rng, 7)) - 3);
        }
        const AltChain image = phi(t, c);
        CHECK(phi(t, image) == image);
        CHECK(is_supported_on_aligned(t, image));
        CHECK(is_integral(image));
    }
}

TEST_CASE("naturality under constructed isometries") {
    const Tree b = gen_regular_ball(3, 4);
    const auto all = all_vertices(b.size());
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const Vertex child = static_cast<Vertex>(1 + uniform_index(rng, 3));
        const Vertex image = static_cast<Vertex>(1 + uniform_index(rng, 3));
        const auto g = extend_partial_isometry(b, PartialIsometry({{0, 0}, {child, image}}), all);
        REQUIRE(g);
        const auto x = sample_tuple(b, 4, rng);
        const AltChain c = AltChain::basis(x);
        CHECK(phi(b, push_forward(c, *g)) == push_forward(phi(b, c), *g));
    }
}

TEST_CASE("norm scans") {
    const Tree t = tripod();
    const auto scan = phi_norm_scan(t, 2, 50, 1);
    CHECK(scan.ok());
    CHECK(scan.max_norm == 3);
    const auto path_scan = phi_norm_scan(path_tree(9), 3, 50, 1);
    CHECK(path_scan.max_norm == 1);

    const auto big = phi_norm_scan(gen_random_tree(40, 2), 4, 300, 3);
    CHECK(big.ok());
    CHECK(big.max_standard_norm <= 4);
    CHECK(big.max_norm <= 15);
}

TEST_CASE("pate identities on a regular ball") {
    for (const auto& r : verify_pate_identities(gen_regular_ball(3, 4), 100, 5)) {
        INFO(r.check);
        CHECK(r.samples > 0);
        CHECK(r.ok());
    }
}
