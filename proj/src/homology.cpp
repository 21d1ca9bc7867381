#include "arboreal/homology.hpp"

#include "arboreal/errors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace arboreal {

namespace {

using SparseColumn = std::vector<std::pair<std::size_t, Rational>>;

// a -= factor * b, both sorted by row.
void subtract_scaled(SparseColumn& a, const Rational& factor, const SparseColumn& b) {
    SparseColumn out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            out.push_back(std::move(*ia++));
        } else if (ia == a.end() || ib->first < ia->first) {
            out.emplace_back(ib->first, -factor * ib->second);
            ++ib;
        } else {
            Rational v = ia->second - factor * ib->second;
            if (v != 0) out.emplace_back(ia->first, std::move(v));
            ++ia;
            ++ib;
        }
    }
    a = std::move(out);
}

void extend_members(std::span<const Vertex> vertices, std::size_t start, VertexTuple& prefix, std::size_t length,
                    const TupleMembership& member, std::vector<VertexTuple>& out, std::size_t cap) {
    if (prefix.size() == length) {
        if (out.size() >= cap) {
            throw CapExceeded("chain space of degree " + std::to_string(length - 1) + " exceeds the cap of " +
                              std::to_string(cap) + " tuples");
        }
        out.push_back(prefix);
        return;
    }
    for (std::size_t k = start; k + (length - prefix.size()) <= vertices.size(); ++k) {
        prefix.push_back(vertices[k]);
        if (!member || member(prefix)) extend_members(vertices, k + 1, prefix, length, member, out, cap);
        prefix.pop_back();
    }
}

}  // namespace

std::optional<std::size_t> ChainBasis::find(std::span<const Vertex> canonical) const {
    auto it = index.find(VertexTuple(canonical.begin(), canonical.end()));
    if (it == index.end()) return std::nullopt;
    return it->second;
}

ChainBasis enumerate_basis(std::span<const Vertex> vertices, int degree, const TupleMembership& member,
                           std::size_t cap) {
    if (degree < 0) throw std::invalid_argument("negative degree");
    std::vector<Vertex> sorted(vertices.begin(), vertices.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("vertex set has duplicates");
    }
    ChainBasis basis;
    basis.degree = degree;
    VertexTuple prefix;
    extend_members(sorted, 0, prefix, static_cast<std::size_t>(degree) + 1, member, basis.tuples, cap);
    for (std::size_t i = 0; i < basis.tuples.size(); ++i) basis.index.emplace(basis.tuples[i], i);
    return basis;
}

SparseMatrix boundary_matrix(const ChainBasis& source, const ChainBasis& target) {
    if (source.degree != target.degree + 1) throw std::invalid_argument("boundary_matrix: degree mismatch");
    SparseMatrix m;
    m.rows = target.dimension();
    m.columns.reserve(source.dimension());
    for (const auto& tuple : source.tuples) {
        SparseColumn col;
        for (std::size_t j = 0; j < tuple.size(); ++j) {
            const auto row = target.find(face_tuple(tuple, j));
            if (!row) throw std::invalid_argument("subcomplex is not closed under faces");
            col.emplace_back(*row, (j % 2 == 0) ? Rational(1) : Rational(-1));
        }
        std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        m.columns.push_back(std::move(col));
    }
    return m;
}

std::size_t exact_rank(const SparseMatrix& m, std::optional<std::size_t> known_bound) {
    // Column reduction keyed on the lowest (largest-row) entry; boundary
    // matrices in lexicographic order reduce with little fill.
    std::unordered_map<std::size_t, SparseColumn> pivot_of_low;
    std::size_t rank = 0;
    const std::size_t bound = std::min({known_bound.value_or(m.rows), m.rows, m.cols()});
    for (const auto& original : m.columns) {
        if (rank >= bound) break;
        SparseColumn col = original;
        while (!col.empty()) {
            auto it = pivot_of_low.find(col.back().first);
            if (it == pivot_of_low.end()) break;
            const Rational factor = col.back().second / it->second.back().second;
            subtract_scaled(col, factor, it->second);
        }
        if (col.empty()) continue;
        const std::size_t low = col.back().first;
        pivot_of_low.emplace(low, std::move(col));
        ++rank;
    }
    return rank;
}

std::vector<ExactnessRecord> verify_exactness(std::span<const Vertex> vertices, int n_max,
                                              const TupleMembership& member, std::size_t cap) {
    if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
    std::vector<ChainBasis> bases;
    for (int n = 0; n <= n_max + 1; ++n) bases.push_back(enumerate_basis(vertices, n, member, cap));

    std::vector<ExactnessRecord> records;
    // kernel of the augmentation: surjective onto the scalars when non-empty
    std::size_t kernel = bases[0].dimension() - (bases[0].dimension() > 0 ? 1 : 0);
    for (int n = 0; n <= n_max; ++n) {
        const auto& source = bases[static_cast<std::size_t>(n) + 1];
        const auto& target = bases[static_cast<std::size_t>(n)];
        // image of the next boundary lies in the kernel, so the kernel bounds its rank
        const std::size_t image = exact_rank(boundary_matrix(source, target), kernel);
        records.push_back({n, target.dimension(), image, kernel, image == kernel});
        kernel = source.dimension() - image;
    }
    return records;
}

BoundaryData make_boundary_data(std::span<const Vertex> vertices, int degree, const TupleMembership& member,
                                std::size_t cap) {
    BoundaryData data;
    data.rows = enumerate_basis(vertices, degree, member, cap);
    data.columns = enumerate_basis(vertices, degree + 1, member, cap);
    data.matrix = boundary_matrix(data.columns, data.rows);
    return data;
}

TupleMembership aligned_membership(const Tree& t) {
    return [&t](std::span<const Vertex> x) { return is_aligned(t, x); };
}

std::vector<Vertex> all_vertices(std::size_t n) {
    std::vector<Vertex> out(n);
    std::iota(out.begin(), out.end(), Vertex{0});
    return out;
}

}  // namespace arboreal
