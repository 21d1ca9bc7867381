#include "arboreal/lp.hpp"

#include "arboreal/errors.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace arboreal {

namespace {

// Tableau over the row-sign-normalised system [A | I] z = |b|; the identity
// block holds artificials and, after pivoting, the columns of B^{-1}. The
// objective row holds reduced costs and is updated by every pivot.
class Tableau {
public:
    Tableau(const LinearProgram& lp) : m_(lp.rows()), n_(lp.cols()), flip_(m_, 1), basis_(m_) {
        t_.assign(m_, std::vector<Rational>(n_ + m_ + 1, Rational(0)));
        for (std::size_t i = 0; i < m_; ++i) {
            if (lp.a[i].size() != n_) throw std::invalid_argument("LP row width mismatch");
            if (lp.b[i] < 0) flip_[i] = -1;
            for (std::size_t j = 0; j < n_; ++j) t_[i][j] = flip_[i] > 0 ? lp.a[i][j] : Rational(-lp.a[i][j]);
            t_[i][n_ + i] = 1;
            t_[i][n_ + m_] = flip_[i] > 0 ? lp.b[i] : Rational(-lp.b[i]);
            basis_[i] = n_ + i;
        }
        basic_.assign(n_ + m_, false);
        for (std::size_t i = 0; i < m_; ++i) basic_[n_ + i] = true;
    }

    void set_cost(const std::vector<Rational>& cost) {
        cost_ = cost;
        obj_.assign(n_ + m_ + 1, Rational(0));
        for (std::size_t j = 0; j < n_ + m_; ++j) obj_[j] = cost[j];
        for (std::size_t i = 0; i < m_; ++i) {
            const Rational& cb = cost[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= n_ + m_; ++j) {
                if (t_[i][j] != 0) obj_[j] -= cb * t_[i][j];
            }
        }
    }

    // Dantzig pricing; after a run of degenerate pivots falls back to Bland's
    // rule until the objective moves again. Only columns < allowed may enter.
    LpStatus optimise(std::size_t allowed) {
        std::size_t degenerate_run = 0;
        for (;;) {
            const bool bland = degenerate_run >= kDegenerateLimit;
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < allowed; ++j) {
                if (basic_[j] || obj_[j] >= 0) continue;
                if (!entering || (!bland && obj_[j] < obj_[*entering])) entering = j;
                if (bland) break;
            }
            if (!entering) return LpStatus::optimal;

            std::optional<std::size_t> leaving;
            Rational best_ratio;
            for (std::size_t i = 0; i < m_; ++i) {
                const Rational& entry = t_[i][*entering];
                if (entry <= 0) continue;
                Rational ratio = t_[i][n_ + m_] / entry;
                if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
                    leaving = i;
                    best_ratio = std::move(ratio);
                }
            }
            if (!leaving) return LpStatus::unbounded;
            degenerate_run = best_ratio == 0 ? degenerate_run + 1 : 0;
            pivot(*leaving, *entering);
        }
    }

    // Pivots basic artificials out wherever a structural column allows it.
    void expel_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (t_[i][j] != 0 && !basic_[j]) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    Rational objective() const { return -obj_[n_ + m_]; }

    std::vector<Rational> primal() const {
        std::vector<Rational> x(n_, Rational(0));
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) x[basis_[i]] = t_[i][n_ + m_];
        }
        return x;
    }

    // (c_B B^{-1})_k is the cost of artificial k minus its reduced cost.
    std::vector<Rational> dual() const {
        std::vector<Rational> y(m_, Rational(0));
        for (std::size_t k = 0; k < m_; ++k) {
            y[k] = cost_[n_ + k] - obj_[n_ + k];
            if (flip_[k] < 0) y[k] = -y[k];
        }
        return y;
    }

    std::size_t pivots() const { return pivots_; }

private:
    static constexpr std::size_t kDegenerateLimit = 50;

    static void eliminate(std::vector<Rational>& target, const std::vector<Rational>& source, std::size_t col) {
        if (target[col] == 0) return;
        const Rational factor = target[col];
        for (std::size_t j = 0; j < source.size(); ++j) {
            if (source[j] != 0) target[j] -= factor * source[j];
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        const Rational scale = t_[row][col];
        for (auto& entry : t_[row]) {
            if (entry != 0) entry /= scale;
        }
        for (std::size_t i = 0; i < m_; ++i) {
            if (i != row) eliminate(t_[i], t_[row], col);
        }
        eliminate(obj_, t_[row], col);
        basic_[basis_[row]] = false;
        basic_[col] = true;
        basis_[row] = col;
        ++pivots_;
    }

    std::size_t m_, n_;
    std::vector<int> flip_;
    std::vector<std::size_t> basis_;
    std::vector<bool> basic_;
    std::vector<std::vector<Rational>> t_;
    std::vector<Rational> obj_;
    std::vector<Rational> cost_;
    std::size_t pivots_ = 0;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp, std::size_t basis_cap) {
    if (lp.a.size() != lp.rows()) throw std::invalid_argument("LP has inconsistent row count");
    if (lp.rows() > basis_cap) {
        throw CapExceeded("LP basis of " + std::to_string(lp.rows()) + " rows exceeds the cap of " +
                          std::to_string(basis_cap));
    }
    const std::size_t m = lp.rows(), n = lp.cols();
    Tableau tableau(lp);
    LpResult result;

    std::vector<Rational> phase_one(n + m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) phase_one[n + i] = 1;
    tableau.set_cost(phase_one);
    tableau.optimise(n);
    const Rational infeasibility = tableau.objective();
    if (infeasibility > 0) {
        result.status = LpStatus::infeasible;
        result.y = tableau.dual();
        result.objective = infeasibility;
        result.pivots = tableau.pivots();
        return result;
    }

    tableau.expel_artificials();
    std::vector<Rational> phase_two(lp.c);
    phase_two.resize(n + m, Rational(0));
    tableau.set_cost(phase_two);
    result.status = tableau.optimise(n);
    result.pivots = tableau.pivots();
    if (result.status == LpStatus::unbounded) return result;
    result.x = tableau.primal();
    result.y = tableau.dual();
    result.objective = tableau.objective();
    return result;
}

}  // namespace arboreal
