#include "arboreal/aligned.hpp"

#include "arboreal/homology.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace arboreal {

AltChain phi_tuple(const Tree& t, std::span<const Vertex> x) {
    if (x.empty()) throw std::invalid_argument("phi of an empty tuple");
    for (Vertex v : x) t.neighbors(v);  // id validation
    AltChain out(static_cast<int>(x.size()) - 1);
    if (x.size() <= 2) {
        out.add_term(x, 1);
        return out;
    }
    VertexTuple projected(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            for (std::size_t k = 0; k < x.size(); ++k) projected[k] = t.project_to_segment(x[k], x[i], x[j]);
            out.add_term(projected, 1);
        }
    }
    return out;
}

AltChain phi(const Tree& t, const AltChain& c) {
    AltChain out(c.degree());
    for (const auto& [key, coeff] : c.terms()) out.add(phi_tuple(t, key), coeff);
    return out;
}

std::array<SignedTuple, 4> pate_terms(const PateArguments& args) {
    auto make = [&](Vertex first, Vertex last) {
        VertexTuple x;
        x.reserve(args.z.size() + 2);
        x.push_back(first);
        x.insert(x.end(), args.z.begin(), args.z.end());
        x.push_back(last);
        return x;
    };
    const auto [u1, u2] = args.u;
    const auto [v1, v2] = args.v;
    return {SignedTuple{make(u1, v1), -1}, SignedTuple{make(u1, v2), +1}, SignedTuple{make(u2, v2), -1},
            SignedTuple{make(u2, v1), +1}};
}

AltChain pate(const PateArguments& args) {
    AltChain out(static_cast<int>(args.z.size()) + 1);
    for (const auto& term : pate_terms(args)) out.add_term(term.tuple, term.sign);
    return out;
}

std::optional<StandardConfiguration> detect_standard_configuration(const Tree& t, std::span<const Vertex> x,
                                                                   std::size_t i, std::size_t j) {
    if (i > j || j >= x.size()) throw std::out_of_range("pair indices out of range");
    VertexTuple projections(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) projections[k] = t.project_to_segment(x[k], x[i], x[j]);
    if (canonicalize_tuple(projections).sign == 0) return std::nullopt;

    StandardConfiguration config;
    config.renumbering.resize(x.size());
    std::iota(config.renumbering.begin(), config.renumbering.end(), std::size_t{0});
    std::vector<int> position(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) position[k] = t.distance(x[i], projections[k]);
    std::sort(config.renumbering.begin(), config.renumbering.end(),
              [&](std::size_t a, std::size_t b) { return position[a] < position[b]; });
    for (std::size_t k : config.renumbering) {
        config.spine_positions.push_back(position[k]);
        config.hanging_lengths.push_back(t.distance(x[k], projections[k]));
        config.projections.push_back(projections[k]);
    }
    return config;
}

bool is_standard_ordered(const Tree& t, std::span<const Vertex> x) {
    if (x.empty()) return false;
    auto config = detect_standard_configuration(t, x, 0, x.size() - 1);
    if (!config) return false;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (config->renumbering[k] != k) return false;
    }
    return true;
}

VertexTuple sample_tuple(const Tree& t, std::size_t length, std::mt19937_64& rng) {
    if (length == 0 || length > t.size()) throw std::invalid_argument("cannot sample that many distinct vertices");
    std::vector<Vertex> pool;
    if (uniform_index(rng, 2) == 0) {
        const auto center = static_cast<Vertex>(uniform_index(rng, t.size()));
        pool = t.ball(center, 2 + static_cast<int>(uniform_index(rng, 2)));
    }
    if (pool.size() < length) pool = all_vertices(t.size());
    // partial Fisher-Yates
    for (std::size_t k = 0; k < length; ++k) {
        const std::size_t pick = k + uniform_index(rng, pool.size() - k);
        std::swap(pool[k], pool[pick]);
    }
    return VertexTuple(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(length));
}

std::optional<VertexTuple> sample_standard_configuration(const Tree& t, int n, std::mt19937_64& rng) {
    if (n < 1) throw std::invalid_argument("standard configurations need degree at least 1");
    for (int attempt = 0; attempt < 64; ++attempt) {
        const auto u = static_cast<Vertex>(uniform_index(rng, t.size()));
        std::vector<Vertex> far;
        for (std::size_t w = 0; w < t.size(); ++w) {
            if (t.distance(u, static_cast<Vertex>(w)) >= n) far.push_back(static_cast<Vertex>(w));
        }
        if (far.empty()) continue;
        const Vertex v = far[uniform_index(rng, far.size())];
        const auto spine = t.geodesic(u, v);

        // n-1 distinct interior spine positions, increasing
        std::vector<std::size_t> interior(spine.size() - 2);
        std::iota(interior.begin(), interior.end(), std::size_t{1});
        for (std::size_t k = 0; k + 1 < static_cast<std::size_t>(n); ++k) {
            std::swap(interior[k], interior[k + uniform_index(rng, interior.size() - k)]);
        }
        interior.resize(static_cast<std::size_t>(n) - 1);
        std::sort(interior.begin(), interior.end());

        VertexTuple x{u};
        for (std::size_t pos : interior) {
            std::vector<Vertex> hanging;
            for (std::size_t w = 0; w < t.size(); ++w) {
                if (t.project_to_segment(static_cast<Vertex>(w), u, v) == spine[pos]) {
                    hanging.push_back(static_cast<Vertex>(w));
                }
            }
            x.push_back(hanging[uniform_index(rng, hanging.size())]);
        }
        x.push_back(v);
        return x;
    }
    return std::nullopt;
}

VerificationReport verify_chain_map(const Tree& t, int degree, std::size_t samples, std::uint64_t seed) {
    if (degree < 1) throw std::invalid_argument("chain-map check needs degree at least 1");
    VerificationReport report;
    report.check = "chain-map";
    report.degree = degree;
    if (static_cast<std::size_t>(degree) + 1 > t.size()) {
        report.detail = "tree has fewer than degree+1 vertices";
        return report;
    }
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        const auto x = sample_tuple(t, static_cast<std::size_t>(degree) + 1, rng);
        ++report.samples;
        const AltChain lhs = boundary(phi_tuple(t, x));
        const AltChain rhs = phi(t, boundary(AltChain::basis(x)));
        if (lhs == rhs) {
            ++report.passed;
        } else if (!report.counterexample) {
            report.counterexample = x;
            report.detail = "boundary of phi:\n" + format_chain(lhs) + "phi of boundary:\n" + format_chain(rhs);
        }
    }
    return report;
}

namespace {

VertexTuple random_vertices(const Tree& t, std::size_t length, std::mt19937_64& rng) {
    VertexTuple out(length);
    for (auto& v : out) v = static_cast<Vertex>(uniform_index(rng, t.size()));
    return out;
}

VertexPair random_pair(const Tree& t, std::mt19937_64& rng) {
    const auto p = random_vertices(t, 2, rng);
    return {p[0], p[1]};
}

void record(VerificationReport& report, bool ok, const VertexTuple& witness) {
    ++report.samples;
    if (ok) {
        ++report.passed;
    } else if (!report.counterexample) {
        report.counterexample = witness;
    }
}

VertexTuple flatten(const PateArguments& a) {
    VertexTuple out{a.u.first, a.u.second};
    out.insert(out.end(), a.z.begin(), a.z.end());
    out.push_back(a.v.first);
    out.push_back(a.v.second);
    return out;
}

}  // namespace

std::vector<VerificationReport> verify_pate_identities(const Tree& t, std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    VerificationReport cocycle_u, cocycle_v, faces, rewrite;
    cocycle_u.check = "pate-cocycle-u";
    cocycle_v.check = "pate-cocycle-v";
    faces.check = "pate-faces";
    rewrite.check = "phi-pate-rewrite";

    for (std::size_t s = 0; s < samples; ++s) {
        const int n = 2 + static_cast<int>(uniform_index(rng, 4));
        const auto z = random_vertices(t, static_cast<std::size_t>(n) - 1, rng);
        const auto u = random_pair(t, rng);
        const auto v = random_pair(t, rng);
        const auto w = random_pair(t, rng);  // the inserted middle points u''' and v'''
        const PateArguments args{u, z, v};

        const bool u_ok = pate(args) == pate({{u.first, w.first}, z, v}) + pate({{w.first, u.second}, z, v});
        const bool v_ok = pate(args) == pate({u, z, {v.first, w.second}}) + pate({u, z, {w.second, v.second}});
        record(cocycle_u, u_ok, flatten(args));
        record(cocycle_v, v_ok, flatten(args));

        bool faces_ok = true;
        for (int j = 0; j <= n; ++j) {
            AltChain lhs(n - 1);
            for (const auto& term : pate_terms(args)) {
                lhs.add_term(face_tuple(term.tuple, static_cast<std::size_t>(j)), term.sign);
            }
            const AltChain rhs = (j == 0 || j == n)
                                     ? AltChain(n - 1)
                                     : pate({u, face_tuple(z, static_cast<std::size_t>(j) - 1), v});
            faces_ok = faces_ok && lhs == rhs;
        }
        record(faces, faces_ok, flatten(args));

        const int rewrite_degree = 2 + static_cast<int>(uniform_index(rng, 4));
        if (auto y = sample_standard_configuration(t, rewrite_degree, rng)) {
            const std::size_t last = y->size() - 1;
            VertexTuple bars;
            for (std::size_t k = 1; k < last; ++k) bars.push_back(t.project_to_segment((*y)[k], (*y)[0], (*y)[last]));
            const AltChain expected = pate({{(*y)[0], (*y)[1]}, bars, {(*y)[last - 1], (*y)[last]}});
            record(rewrite, phi_tuple(t, *y) == expected, *y);
        }
    }
    if (rewrite.samples == 0) rewrite.detail = "tree too small for standard configurations of degree >= 2";
    return {cocycle_u, cocycle_v, faces, rewrite};
}

NormScan phi_norm_scan(const Tree& t, int degree, std::size_t samples, std::uint64_t seed) {
    if (degree < 0) throw std::invalid_argument("negative degree");
    NormScan scan;
    scan.degree = degree;
    const std::size_t length = static_cast<std::size_t>(degree) + 1;
    if (length > t.size()) return scan;
    const Rational term_bound = Rational((degree + 1) * (degree + 2)) / 2;
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        const auto x = sample_tuple(t, length, rng);
        const Rational norm = l1_norm(phi_tuple(t, x));
        ++scan.samples;
        if (norm > scan.max_norm || !scan.worst_tuple) {
            scan.max_norm = std::max(norm, scan.max_norm);
            scan.worst_tuple = x;
        }
        if (norm > term_bound) ++scan.term_bound_violations;

        bool standard = false;
        for (std::size_t i = 0; i < length && !standard; ++i) {
            for (std::size_t j = i + 1; j < length && !standard; ++j) {
                standard = detect_standard_configuration(t, x, i, j).has_value();
            }
        }
        if (standard) {
            ++scan.standard_samples;
            scan.max_standard_norm = std::max(scan.max_standard_norm, norm);
            if (norm > 4) ++scan.standard_bound_violations;
        }
    }
    return scan;
}

bool is_supported_on_aligned(const Tree& t, const AltChain& c) {
    return std::all_of(c.terms().begin(), c.terms().end(),
                       [&](const auto& kv) { return is_aligned(t, kv.first); });
}

}  // namespace arboreal
