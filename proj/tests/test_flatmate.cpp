#include "arboreal/aligned.hpp"
#include "arboreal/errors.hpp"
#include "arboreal/flatmate.hpp"
#include "support/oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace arboreal;

namespace {

Tree tripod() { return build_tree(std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}}); }
Tree point() { return Tree::from_edges({}); }

oracle::DenseMatrix dense(const BoundaryData& d) {
    oracle::DenseMatrix out(d.rows.dimension(), std::vector<Rational>(d.columns.dimension(), Rational(0)));
    for (std::size_t c = 0; c < d.matrix.cols(); ++c) {
        for (const auto& [r, v] : d.matrix.columns[c]) out[r][c] = v;
    }
    return out;
}

std::vector<Rational> dense(const BoundaryData& d, const AltChain& z) {
    std::vector<Rational> out(d.rows.dimension(), Rational(0));
    for (const auto& [x, k] : z.terms()) out[*d.rows.find(x)] = k;
    return out;
}

AltChain random_boundary(const BoundaryData& d, std::mt19937_64& rng, std::size_t terms = 3) {
    AltChain c(d.columns.degree);
    for (std::size_t k = 0; k < terms; ++k) {
        c.add_term(d.columns.tuples[uniform_index(rng, d.columns.dimension())],
                   static_cast<int>(uniform_index(rng, 5)) - 2);
    }
    return boundary(c);
}

}  // namespace

TEST_CASE("flatmate predicate") {
    const ProductComplex paths(path_tree(3), path_tree(4));
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        VertexTuple x;
        for (int k = 0; k < 4; ++k) x.push_back(static_cast<Vertex>(uniform_index(rng, paths.size())));
        CHECK(is_flatmate(paths, x));
    }
    const ProductComplex p(tripod(), path_tree(2));
    CHECK_FALSE(is_flatmate(p, std::vector<Vertex>{p.id(1, 0), p.id(2, 0), p.id(3, 1)}));
    CHECK(is_flatmate(p, std::vector<Vertex>{p.id(1, 0), p.id(3, 1)}));
    CHECK(is_flatmate(p, std::vector<Vertex>{p.id(1, 0), p.id(0, 1), p.id(2, 1)}));
    CHECK(p.coordinates(p.id(3, 1)) == std::pair<Vertex, Vertex>{3, 1});
    CHECK(p.size() == 8);
    CHECK(p.describe() == "4x2");

    // permutation invariance and closure under subtuples
    const ProductComplex q(gen_random_tree(6, 3), tripod());
    for (int trial = 0; trial < 200; ++trial) {
        VertexTuple x;
        for (int k = 0; k < 4; ++k) x.push_back(static_cast<Vertex>(uniform_index(rng, q.size())));
        const bool flat = is_flatmate(q, x);
        VertexTuple y = x;
        std::reverse(y.begin(), y.end());
        CHECK(is_flatmate(q, y) == flat);
        if (flat) {
            for (std::size_t j = 0; j < x.size(); ++j) CHECK(is_flatmate(q, face_tuple(x, j)));
        }
    }
}

TEST_CASE("flatmate exactness") {
    for (const auto& r : flatmate_exactness(ProductComplex(path_tree(2), path_tree(2)), 2)) CHECK(r.exact);
    const auto tripod_edge = flatmate_exactness(ProductComplex(tripod(), path_tree(2)), 2);
    REQUIRE(tripod_edge.size() == 3);
    for (const auto& r : tripod_edge) CHECK(r.exact);
    const auto single = flatmate_exactness(ProductComplex(point(), point()), 0);
    CHECK(single.at(0).exact);
}

TEST_CASE("trivial second factor gives the aligned complex") {
    CHECK(trivial_factor_matches_aligned(tripod(), 2));
    CHECK(trivial_factor_matches_aligned(gen_random_tree(9, 4), 2));
    CHECK(trivial_factor_matches_aligned(gen_regular_ball(3, 2), 2));
}

TEST_CASE("minimal preimages: basic cases") {
    const ProductComplex p(path_tree(3), point());
    const auto data = flatmate_boundary_data(p, 1);

    const auto zero = min_l1_preimage(data, AltChain(1));
    CHECK(zero.status == PreimageStatus::solved);
    CHECK(zero.norm == 0);
    CHECK(zero.preimage.is_zero());
    CHECK(zero.certificate_ok);

    const AltChain abc = AltChain::basis(std::vector<Vertex>{0, 1, 2});
    const auto r = min_l1_preimage(data, boundary(abc));
    REQUIRE(r.status == PreimageStatus::solved);
    CHECK(r.norm == 1);
    CHECK(r.preimage == abc);
    CHECK(r.dual_objective == 1);
    CHECK(r.certificate_ok);

    CHECK(min_l1_preimage(data, AltChain::basis(std::vector<Vertex>{0, 1})).status == PreimageStatus::not_a_cycle);
    CHECK_THROWS(min_l1_preimage(data, AltChain(0)));
}

TEST_CASE("a cycle that is not a boundary gets a Farkas certificate") {
    const TupleMembership hollow = [](std::span<const Vertex> x) { return x.size() <= 2; };
    const auto data = make_boundary_data(all_vertices(4), 1, hollow);
    const AltChain z = boundary(AltChain::basis(std::vector<Vertex>{0, 1, 2}));
    const auto r = min_l1_preimage(data, z);
    CHECK(r.status == PreimageStatus::not_a_boundary);
    CHECK(r.certificate_ok);
    CHECK(r.dual_objective > 0);
}

TEST_CASE("minimal preimage norms agree with vertex enumeration") {
    struct Case {
        ProductComplex p;
        int degree;
    };
    const std::vector<Case> cases{{ProductComplex(path_tree(5), point()), 1},
                                  {ProductComplex(path_tree(4), point()), 1},
                                  {ProductComplex(path_tree(3), path_tree(2)), 0},
                                  {ProductComplex(path_tree(2), path_tree(2)), 0},
                                  {ProductComplex(path_tree(2), path_tree(2)), 1}};
    std::mt19937_64 rng(7);
    for (const auto& c : cases) {
        const auto data = flatmate_boundary_data(c.p, c.degree);
        const auto a = dense(data);
        for (int trial = 0; trial < 6; ++trial) {
            const AltChain z = random_boundary(data, rng);
            const auto r = min_l1_preimage(data, z);
            REQUIRE(r.status == PreimageStatus::solved);
            CHECK(r.certificate_ok);
            CHECK(boundary(r.preimage) == z);
            CHECK(l1_norm(r.preimage) == r.norm);
            const auto expected = oracle::brute_min_l1(a, dense(data, z));
            REQUIRE(expected);
            CHECK(r.norm == *expected);
        }
    }
}

TEST_CASE("retractions preserve flatmate tuples and the optimum") {
    const std::vector<ProductComplex> products{ProductComplex(tripod(), path_tree(3)),
                                               ProductComplex(gen_random_tree(7, 2), path_tree(2)),
                                               ProductComplex(path_tree(4), path_tree(3))};
    std::mt19937_64 rng(17);
    for (const auto& p : products) {
        const auto data = flatmate_boundary_data(p, 1);
        for (int trial = 0; trial < 8; ++trial) {
            const AltChain z = random_boundary(data, rng);
            if (z.is_zero()) continue;
            VertexTuple keep;
            for (const auto& [x, k] : z.terms()) keep.insert(keep.end(), x.begin(), x.end());
            const auto r = flatmate_retraction(p, keep);
            for (Vertex v : keep) CHECK(r[v] == v);
            for (const auto& x : data.columns.tuples) {
                VertexTuple image;
                for (Vertex v : x) image.push_back(r[v]);
                if (canonicalize_tuple(image).sign != 0) CHECK(is_flatmate(p, image));
            }

            PreimageOptions with;
            with.retraction = r;
            const auto fast = min_l1_preimage(data, z, with);
            const auto plain = min_l1_preimage(data, z);
            REQUIRE(fast.status == PreimageStatus::solved);
            REQUIRE(plain.status == PreimageStatus::solved);
            CHECK(fast.certificate_ok);
            CHECK(plain.certificate_ok);
            CHECK(fast.norm == plain.norm);
        }
    }
}

TEST_CASE("boundaries of basis tuples have preimage norm at most one") {
    const ProductComplex p(tripod(), path_tree(3));
    const auto data = flatmate_boundary_data(p, 1);
    for (std::size_t j = 0; j < data.columns.dimension(); j += 7) {
        const AltChain z = boundary(AltChain::basis(data.columns.tuples[j]));
        const auto r = min_l1_preimage(data, z);
        REQUIRE(r.status == PreimageStatus::solved);
        CHECK(r.norm <= 1);
        CHECK(r.certificate_ok);
    }
}

TEST_CASE("probe is deterministic and records exactness") {
    const std::vector<ProductComplex> family{ProductComplex(path_tree(3), path_tree(3)),
                                             ProductComplex(path_tree(3), path_tree(3))};
    const auto a = homotopy_norm_probe(family, 1, 10, 5);
    const auto b = homotopy_norm_probe(family, 1, 10, 5);
    REQUIRE(a.size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(a[k].exact);
        CHECK(a[k].seed == 5 + k);
        CHECK(a[k].cycles_tested == 10);
        CHECK(a[k].certificates_ok == 10);
        CHECK(a[k].max_min_preimage_norm == b[k].max_min_preimage_norm);
        CHECK(*a[k].max_min_preimage_norm >= 0);
        CHECK(*a[k].max_min_preimage_norm <= 1);
    }
    CHECK_FALSE(a[1].suspicious_growth);

    const auto tree_only = homotopy_norm_probe({ProductComplex(tripod(), point())}, 1, 5, 1);
    CHECK(tree_only[0].exact);
    CHECK(tree_only[0].exact_by_degree == std::vector<bool>{true, true});
    CHECK(tree_only[0].certificates_ok == tree_only[0].cycles_tested);
}
