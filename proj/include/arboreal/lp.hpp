#pragma once

#include "arboreal/rational.hpp"

#include <cstddef>
#include <vector>

namespace arboreal {

inline constexpr std::size_t kDefaultLpBasisCap = 2000;

// minimize c.x subject to A x = b, x >= 0 (A dense, row-major)
struct LinearProgram {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    std::vector<Rational> c;

    std::size_t rows() const { return b.size(); }
    std::size_t cols() const { return c.size(); }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    std::vector<Rational> x;  // primal solution when optimal
    // Optimal: dual solution with c - A^T y >= 0 and b.y = objective.
    // Infeasible: Farkas vector with A^T y <= 0 and b.y > 0.
    std::vector<Rational> y;
    Rational objective = 0;
    std::size_t pivots = 0;
};

/**
 * Two-phase dense tableau simplex over exact rationals. Pricing is Dantzig's
 * rule, switching to Bland's rule during long degenerate runs so that the
 * method cannot cycle. Redundant equality rows are
 * tolerated. Throws CapExceeded when the basis would exceed `basis_cap` rows.
 */
LpResult solve_lp(const LinearProgram& lp, std::size_t basis_cap = kDefaultLpBasisCap);

}  // namespace arboreal
