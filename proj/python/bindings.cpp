#include "arboreal/aligned.hpp"
#include "arboreal/errors.hpp"
#include "arboreal/flatmate.hpp"
#include "arboreal/homology.hpp"
#include "arboreal/orbits.hpp"
#include "arboreal/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace arboreal;

namespace {

// Chains come in as {tuple: "p/q"} and go out as [(tuple, "p/q")]; the
// Python side wraps the coefficients in Fraction.
using PyChain = std::map<VertexTuple, std::string>;

AltChain to_chain(const PyChain& terms, int degree) {
    AltChain c(degree);
    for (const auto& [x, q] : terms) {
        if (static_cast<int>(x.size()) != degree + 1) throw std::invalid_argument("tuple length does not match degree");
        c.add_term(x, parse_rational(q));
    }
    return c;
}

std::vector<std::pair<VertexTuple, std::string>> from_chain(const AltChain& c) {
    std::vector<std::pair<VertexTuple, std::string>> out;
    for (const auto& [x, q] : c.terms()) out.emplace_back(x, q.str());
    return out;
}

int degree_of(const PyChain& terms, int fallback) {
    return terms.empty() ? fallback : static_cast<int>(terms.begin()->first.size()) - 1;
}

std::string dump(const Json& j) { return j.dump(); }

template <class T>
std::string dump_all(const std::vector<T>& rows) {
    Json out = Json::array();
    for (const auto& r : rows) out.push_back(to_json(r));
    return out.dump();
}

}  // namespace

PYBIND11_MODULE(_arboreal, m) {
    m.doc() = "Exact aligned-chain computations on trees";

    py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
    py::register_exception<InvalidTree>(m, "InvalidTree", PyExc_ValueError);

    py::class_<Tree>(m, "Tree")
        .def(py::init([](const std::vector<Edge>& edges) { return build_tree(edges); }), py::arg("edges"))
        .def_property_readonly("size", &Tree::size)
        .def("edges", &Tree::edges)
        .def("neighbors", [](const Tree& t, Vertex v) {
            auto n = t.neighbors(v);
            return std::vector<Vertex>(n.begin(), n.end());
        })
        .def("distance", &Tree::distance)
        .def("geodesic", &Tree::geodesic)
        .def("project_to_segment", &Tree::project_to_segment, py::arg("w"), py::arg("u"), py::arg("v"))
        .def("ball", &Tree::ball, py::arg("v"), py::arg("radius"))
        .def("__len__", &Tree::size)
        .def("__repr__", [](const Tree& t) { return "<Tree with " + std::to_string(t.size()) + " vertices>"; });

    m.def("regular_ball", [](int b, int r) { return gen_regular_ball(b, r); }, py::arg("branching"), py::arg("radius"));
    m.def("random_tree", &gen_random_tree, py::arg("n"), py::arg("seed"));
    m.def("path_tree", &path_tree, py::arg("n"));
    m.def("is_aligned", [](const Tree& t, const VertexTuple& x) { return is_aligned(t, x); });
    m.def("hull", [](const Tree& t, const VertexTuple& x) { return convex_hull(t, x).vertices; });

    m.def("_phi", [](const Tree& t, const PyChain& c, int degree) {
        return from_chain(phi(t, to_chain(c, degree_of(c, degree))));
    });
    m.def("_boundary", [](const PyChain& c, int degree) {
        return from_chain(boundary(to_chain(c, degree_of(c, degree))));
    });
    m.def("_l1_norm", [](const PyChain& c) { return l1_norm(to_chain(c, degree_of(c, 0))).str(); });

    m.def("_verify_chain_map", [](const Tree& t, int degree, std::size_t samples, std::uint64_t seed) {
        return dump(to_json(verify_chain_map(t, degree, samples, seed)));
    });
    m.def("_verify_pate", [](const Tree& t, std::size_t samples, std::uint64_t seed) {
        return dump_all(verify_pate_identities(t, samples, seed));
    });
    m.def("_norm_scan", [](const Tree& t, int degree, std::size_t samples, std::uint64_t seed) {
        return dump(to_json(phi_norm_scan(t, degree, samples, seed)));
    });
    m.def("_exactness_full", [](std::size_t n, int n_max) {
        return dump_all(verify_exactness(all_vertices(n), n_max));
    });
    m.def("_exactness_aligned", [](const Tree& t, int n_max) {
        return dump_all(verify_exactness(all_vertices(t.size()), n_max, aligned_membership(t)));
    });

    m.def("aligned_signature", [](const Tree& t, const VertexTuple& x, bool type_preserving) {
        const auto s = aligned_signature(t, x, type_preserving);
        return py::make_tuple(s.type_bit, s.gaps, s.sort_sign);
    }, py::arg("tree"), py::arg("x"), py::arg("type_preserving") = true);

    m.def("is_flatmate", [](const Tree& a, const Tree& b, const VertexTuple& x) {
        return is_flatmate(ProductComplex(a, b), x);
    });
    m.def("product_id", [](const Tree& a, const Tree& b, Vertex u, Vertex v) { return ProductComplex(a, b).id(u, v); });
    m.def("_min_l1_preimage", [](const Tree& a, const Tree& b, const PyChain& z, int degree) {
        const ProductComplex p(a, b);
        const int n = degree_of(z, degree);
        const auto r = min_l1_preimage(flatmate_boundary_data(p, n), to_chain(z, n));
        static const char* names[] = {"solved", "not_a_cycle", "not_a_boundary"};
        return py::make_tuple(names[static_cast<int>(r.status)], r.norm.str(), from_chain(r.preimage),
                              r.certificate_ok);
    });
    m.def("_flatmate_probe", [](std::size_t k_min, std::size_t k_max, int degree, std::size_t samples,
                                std::uint64_t seed) {
        std::vector<ProductComplex> family;
        for (std::size_t k = k_min; k <= k_max; ++k) family.emplace_back(path_tree(k), path_tree(k));
        return dump_all(homotopy_norm_probe(family, degree, samples, seed));
    });
}
