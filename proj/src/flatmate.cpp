#include "arboreal/flatmate.hpp"

#include "arboreal/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace arboreal {

Vertex ProductComplex::id(Vertex a, Vertex b) const {
    if (!first_.contains(a) || !second_.contains(b)) throw std::out_of_range("product coordinates out of range");
    return static_cast<Vertex>(static_cast<std::size_t>(a) * second_.size() + static_cast<std::size_t>(b));
}

std::pair<Vertex, Vertex> ProductComplex::coordinates(Vertex v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= size()) throw std::out_of_range("product vertex out of range");
    const auto n2 = second_.size();
    return {static_cast<Vertex>(static_cast<std::size_t>(v) / n2), static_cast<Vertex>(static_cast<std::size_t>(v) % n2)};
}

std::string ProductComplex::describe() const {
    return std::to_string(first_.size()) + "x" + std::to_string(second_.size());
}

bool is_flatmate(const ProductComplex& p, std::span<const Vertex> x) {
    VertexTuple firsts, seconds;
    for (Vertex v : x) {
        const auto [a, b] = p.coordinates(v);
        firsts.push_back(a);
        seconds.push_back(b);
    }
    return is_aligned(p.first(), firsts) && is_aligned(p.second(), seconds);
}

TupleMembership flatmate_membership(const ProductComplex& p) {
    return [&p](std::span<const Vertex> x) { return is_flatmate(p, x); };
}

std::vector<ExactnessRecord> flatmate_exactness(const ProductComplex& p, int n_max, std::size_t cap) {
    return verify_exactness(all_vertices(p.size()), n_max, flatmate_membership(p), cap);
}

BoundaryData flatmate_boundary_data(const ProductComplex& p, int degree, std::size_t cap) {
    return make_boundary_data(all_vertices(p.size()), degree, flatmate_membership(p), cap);
}

namespace {

Rational column_dot(const std::vector<std::pair<std::size_t, Rational>>& column, const std::vector<Rational>& y) {
    Rational sum = 0;
    for (const auto& [row, value] : column) {
        if (y[row] != 0) sum += value * y[row];
    }
    return sum;
}

struct Violation {
    Rational magnitude;
    std::size_t column;
};

bool verify_certificate(const BoundaryData& data, const AltChain& z, const PreimageResult& r) {
    if (r.dual.size() != data.rows.dimension()) return false;
    Rational dual_objective = 0;
    for (const auto& [key, coeff] : z.terms()) dual_objective += coeff * r.dual[*data.rows.find(key)];
    if (r.status == PreimageStatus::solved) {
        if (r.preimage.degree() != z.degree() + 1 || boundary(r.preimage) != z) return false;
        if (l1_norm(r.preimage) != r.norm || dual_objective != r.norm) return false;
        for (const auto& tuple : r.preimage.terms()) {
            if (!data.columns.find(tuple.first)) return false;
        }
        return std::all_of(data.matrix.columns.begin(), data.matrix.columns.end(),
                           [&](const auto& col) { return abs(column_dot(col, r.dual)) <= 1; });
    }
    if (r.status == PreimageStatus::not_a_boundary) {
        return dual_objective > 0 && std::all_of(data.matrix.columns.begin(), data.matrix.columns.end(),
                                                 [&](const auto& col) { return column_dot(col, r.dual) == 0; });
    }
    return false;
}

// (r^* y)(s) = y(r_# s), with r_# s the canonical image of s or zero.
std::vector<Rational> pull_back(const BoundaryData& data, const std::vector<Vertex>& r, const std::vector<Rational>& y) {
    std::vector<Rational> out(y.size(), Rational(0));
    VertexTuple image;
    for (std::size_t i = 0; i < data.rows.dimension(); ++i) {
        image.clear();
        for (Vertex v : data.rows.tuples[i]) image.push_back(r.at(static_cast<std::size_t>(v)));
        const auto canonical = canonicalize_tuple(image);
        if (canonical.sign == 0) continue;
        const auto row = data.rows.find(canonical.tuple);
        if (row && y[*row] != 0) out[i] = canonical.sign * y[*row];
    }
    return out;
}

// Alignment-preserving retraction of one tree onto the kept vertices and the
// branch points of their hull.
std::vector<Vertex> factor_retraction(const Tree& t, const std::set<Vertex>& keep) {
    const VertexTuple kept(keep.begin(), keep.end());
    const ConvexHull hull = convex_hull(t, kept);
    std::vector<bool> in_hull(t.size(), false);
    for (Vertex v : hull.vertices) in_hull[v] = true;

    std::vector<Vertex> nearest(t.size(), -1);
    std::deque<Vertex> queue(hull.vertices.begin(), hull.vertices.end());
    for (Vertex v : hull.vertices) nearest[v] = v;
    while (!queue.empty()) {
        const Vertex a = queue.front();
        queue.pop_front();
        for (Vertex b : t.neighbors(a)) {
            if (nearest[b] < 0) {
                nearest[b] = nearest[a];
                queue.push_back(b);
            }
        }
    }

    auto hull_degree = [&](Vertex v) {
        const auto nbrs = t.neighbors(v);
        return std::count_if(nbrs.begin(), nbrs.end(), [&](Vertex w) { return in_hull[w]; });
    };
    auto is_anchor = [&](Vertex v) { return keep.contains(v) || hull_degree(v) != 2; };

    std::vector<Vertex> collapse(t.size(), -1);
    for (Vertex v : hull.vertices) {
        if (is_anchor(v)) {
            collapse[v] = v;
            continue;
        }
        if (collapse[v] >= 0) continue;
        // Walk both ways along the chain to its anchors, then send the whole
        // chain to the smaller one.
        std::vector<Vertex> chain{v};
        Vertex ends[2];
        int side = 0;
        for (Vertex start : t.neighbors(v)) {
            if (!in_hull[start]) continue;
            Vertex prev = v, cur = start;
            while (!is_anchor(cur)) {
                chain.push_back(cur);
                for (Vertex next : t.neighbors(cur)) {
                    if (in_hull[next] && next != prev) {
                        prev = cur;
                        cur = next;
                        break;
                    }
                }
            }
            ends[side++] = cur;
        }
        const Vertex target = std::min(ends[0], ends[1]);
        for (Vertex c : chain) collapse[c] = target;
    }

    std::vector<Vertex> out(t.size());
    for (std::size_t v = 0; v < t.size(); ++v) out[v] = collapse[nearest[v]];
    return out;
}

bool is_path(const Tree& t) {
    for (std::size_t v = 0; v < t.size(); ++v) {
        if (t.degree(static_cast<Vertex>(v)) > 2) return false;
    }
    return true;
}

}  // namespace

std::vector<Vertex> flatmate_retraction(const ProductComplex& p, std::span<const Vertex> keep) {
    if (keep.empty()) throw std::invalid_argument("retraction needs at least one kept vertex");
    std::vector<Vertex> out(p.size());
    if (is_path(p.first()) && is_path(p.second())) {
        const std::set<Vertex> kept(keep.begin(), keep.end());
        for (std::size_t v = 0; v < out.size(); ++v) {
            out[v] = kept.contains(static_cast<Vertex>(v)) ? static_cast<Vertex>(v) : *kept.begin();
        }
        return out;
    }
    std::set<Vertex> firsts, seconds;
    for (Vertex v : keep) {
        const auto [a, b] = p.coordinates(v);
        firsts.insert(a);
        seconds.insert(b);
    }
    const auto g1 = factor_retraction(p.first(), firsts);
    const auto g2 = factor_retraction(p.second(), seconds);
    for (std::size_t v = 0; v < out.size(); ++v) {
        const auto [a, b] = p.coordinates(static_cast<Vertex>(v));
        out[v] = p.id(g1[a], g2[b]);
    }
    return out;
}

PreimageResult min_l1_preimage(const BoundaryData& data, const AltChain& z, const PreimageOptions& options) {
    if (z.degree() != data.rows.degree) throw std::invalid_argument("cycle degree does not match the boundary data");
    PreimageResult result;
    result.preimage = AltChain(z.degree() + 1);
    result.dual.assign(data.rows.dimension(), Rational(0));

    const bool cycle = z.degree() == 0 ? augmentation(z) == 0 : boundary(z).is_zero();
    if (!cycle) {
        result.status = PreimageStatus::not_a_cycle;
        return result;
    }

    std::map<std::size_t, Rational> rhs;
    for (const auto& [key, coeff] : z.terms()) {
        const auto row = data.rows.find(key);
        if (!row) throw std::invalid_argument("cycle is not supported on the subcomplex");
        rhs.emplace(*row, coeff);
    }

    // Start from the columns spanned by the fixed points of the retraction,
    // or by the vertices that z touches.
    const auto& r = options.retraction;
    std::set<Vertex> support;
    for (const auto& term : z.terms()) support.insert(term.first.begin(), term.first.end());
    if (!r.empty()) {
        for (Vertex v : support) {
            if (static_cast<std::size_t>(v) >= r.size() || r[v] != v) {
                throw std::invalid_argument("retraction must fix the vertices of the cycle");
            }
        }
        for (std::size_t v = 0; v < r.size(); ++v) {
            if (r[v] == static_cast<Vertex>(v)) support.insert(static_cast<Vertex>(v));
        }
    }
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < data.columns.dimension(); ++j) {
        const auto& tuple = data.columns.tuples[j];
        if (std::all_of(tuple.begin(), tuple.end(), [&](Vertex v) { return support.contains(v); })) {
            active.push_back(j);
        }
    }
    std::set<std::size_t> in_active(active.begin(), active.end());

    for (;;) {
        ++result.rounds;
        std::set<std::size_t> row_set;
        for (const auto& [row, coeff] : rhs) row_set.insert(row);
        for (std::size_t j : active) {
            for (const auto& e : data.matrix.columns[j]) row_set.insert(e.first);
        }
        const std::vector<std::size_t> rows(row_set.begin(), row_set.end());
        std::map<std::size_t, std::size_t> local;
        for (std::size_t i = 0; i < rows.size(); ++i) local.emplace(rows[i], i);
        if (rows.size() > options.basis_cap) {
            throw CapExceeded("restricted LP needs " + std::to_string(rows.size()) + " rows, above the basis cap");
        }

        // variables: p_s then q_s for each active column, b = p - q
        LinearProgram lp;
        const std::size_t k = active.size();
        lp.a.assign(rows.size(), std::vector<Rational>(2 * k, Rational(0)));
        lp.b.assign(rows.size(), Rational(0));
        lp.c.assign(2 * k, Rational(1));
        for (std::size_t s = 0; s < k; ++s) {
            for (const auto& [row, value] : data.matrix.columns[active[s]]) {
                lp.a[local.at(row)][s] = value;
                lp.a[local.at(row)][k + s] = -value;
            }
        }
        for (const auto& [row, coeff] : rhs) lp.b[local.at(row)] = coeff;

        const LpResult solved = solve_lp(lp, options.basis_cap);
        if (solved.status == LpStatus::unbounded) throw std::logic_error("l1 minimisation cannot be unbounded");

        std::vector<Rational> y(data.rows.dimension(), Rational(0));
        for (std::size_t i = 0; i < rows.size(); ++i) y[rows[i]] = solved.y[i];
        if (!r.empty()) y = pull_back(data, r, y);

        // Pricing: phase one needs A^T y == 0, phase two needs |A^T y| <= 1.
        const bool feasible = solved.status == LpStatus::optimal;
        std::vector<Violation> violations;
        for (std::size_t j = 0; j < data.matrix.cols(); ++j) {
            if (in_active.contains(j)) continue;
            Rational value = abs(column_dot(data.matrix.columns[j], y));
            if (feasible ? value > 1 : value != 0) violations.push_back({std::move(value), j});
        }

        if (violations.empty()) {
            result.dual = std::move(y);
            result.columns_used = k;
            if (feasible) {
                result.status = PreimageStatus::solved;
                for (std::size_t s = 0; s < k; ++s) {
                    const Rational coeff = solved.x[s] - solved.x[k + s];
                    if (coeff != 0) result.preimage.add_term(data.columns.tuples[active[s]], coeff);
                }
                result.norm = solved.objective;
            } else {
                result.status = PreimageStatus::not_a_boundary;
            }
            for (const auto& [row, coeff] : rhs) result.dual_objective += coeff * result.dual[row];
            result.certificate_ok = verify_certificate(data, z, result);
            return result;
        }

        const std::size_t take = std::min(options.columns_per_round, violations.size());
        std::partial_sort(violations.begin(), violations.begin() + static_cast<std::ptrdiff_t>(take), violations.end(),
                          [](const Violation& a, const Violation& b) {
                              return a.magnitude != b.magnitude ? a.magnitude > b.magnitude : a.column < b.column;
                          });
        for (std::size_t v = 0; v < take; ++v) {
            active.push_back(violations[v].column);
            in_active.insert(violations[v].column);
        }
    }
}

std::vector<HomotopyNormReport> homotopy_norm_probe(const std::vector<ProductComplex>& family, int degree,
                                                    std::size_t samples, std::uint64_t seed,
                                                    const ProbeOptions& options) {
    if (degree < 0) throw std::invalid_argument("negative degree");
    std::vector<HomotopyNormReport> reports;
    for (std::size_t k = 0; k < family.size(); ++k) {
        const ProductComplex& p = family[k];
        HomotopyNormReport report;
        report.instance = p.describe();
        report.factor1_size = p.first().size();
        report.factor2_size = p.second().size();
        report.degree = degree;
        report.seed = seed + k;

        const auto records = flatmate_exactness(p, degree, options.cap);
        for (const auto& r : records) report.exact_by_degree.push_back(r.exact);
        report.exact = records.at(static_cast<std::size_t>(degree)).exact;
        if (report.exact) {
            const BoundaryData data = flatmate_boundary_data(p, degree, options.cap);
            std::mt19937_64 rng(report.seed);
            Rational worst = 0;
            for (std::size_t s = 0; s < samples && data.columns.dimension() > 0; ++s) {
                AltChain z(degree);
                for (int attempt = 0; attempt < 100 && z.is_zero(); ++attempt) {
                    AltChain chain(degree + 1);
                    for (std::size_t term = 0; term < options.chain_terms; ++term) {
                        const auto& tuple = data.columns.tuples[uniform_index(rng, data.columns.dimension())];
                        const auto magnitude = 1 + static_cast<int>(uniform_index(rng, options.max_coefficient));
                        chain.add_term(tuple, uniform_index(rng, 2) == 0 ? magnitude : -magnitude);
                    }
                    z = boundary(chain);
                }
                if (z.is_zero()) break;
                z *= 1 / l1_norm(z);
                PreimageOptions lp = options.lp;
                VertexTuple support;
                for (const auto& term : z.terms()) support.insert(support.end(), term.first.begin(), term.first.end());
                lp.retraction = flatmate_retraction(p, support);
                const auto solved = min_l1_preimage(data, z, lp);
                ++report.cycles_tested;
                if (solved.certificate_ok) ++report.certificates_ok;
                if (solved.status == PreimageStatus::solved) worst = std::max(worst, solved.norm);
            }
            report.max_min_preimage_norm = worst;
        }
        if (!reports.empty() && reports.back().max_min_preimage_norm && report.max_min_preimage_norm &&
            *reports.back().max_min_preimage_norm > 0) {
            report.suspicious_growth =
                *report.max_min_preimage_norm / *reports.back().max_min_preimage_norm > options.growth_threshold;
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

bool trivial_factor_matches_aligned(const Tree& t, int n_max, std::size_t cap) {
    const ProductComplex p(t, Tree::from_edges({}));
    const auto vertices = all_vertices(t.size());
    std::vector<ChainBasis> flat, aligned;
    for (int n = 0; n <= n_max + 1; ++n) {
        flat.push_back(enumerate_basis(vertices, n, flatmate_membership(p), cap));
        aligned.push_back(enumerate_basis(vertices, n, aligned_membership(t), cap));
        if (flat.back().tuples != aligned.back().tuples) return false;
        if (n > 0 && boundary_matrix(flat[n], flat[n - 1]) != boundary_matrix(aligned[n], aligned[n - 1])) {
            return false;
        }
    }
    return true;
}

}  // namespace arboreal
