#include "witness/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "witness/errors.hpp"

namespace witness {

std::string_view solve_status_name(SolveStatus status) {
    switch (status) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::unbounded: return "unbounded";
        case SolveStatus::numerical_failure: return "numerical_failure";
    }
    return "unknown";
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Dense tableau over the columns [structural | slack | artificial | rhs].
class Tableau {
public:
    Tableau(const StandardFormLP& lp)
        : n_(lp.num_vars),
          num_slacks_(lp.ub_rows.size()),
          rows_(lp.eq_rows.size() + lp.ub_rows.size()) {
        num_real_ = n_ + num_slacks_;
        cols_ = num_real_ + rows_;  // one artificial per row
        data_.assign(rows_ * (cols_ + 1), 0.0);
        basis_.assign(rows_, kNone);

        for (std::size_t r = 0; r < lp.eq_rows.size(); ++r) {
            if (lp.eq_rows[r].size() != n_) throw input_error("lp row width mismatch");
            load_row(r, lp.eq_rows[r], lp.eq_rhs[r]);
        }
        for (std::size_t r = 0; r < lp.ub_rows.size(); ++r) {
            if (lp.ub_rows[r].size() != n_) throw input_error("lp row width mismatch");
            const std::size_t row = lp.eq_rows.size() + r;
            load_row(row, lp.ub_rows[r], lp.ub_rhs[r]);
            at(row, n_ + r) = 1.0;  // slack
        }
        // Normalize rhs >= 0 so artificials form a feasible starting basis.
        for (std::size_t r = 0; r < rows_; ++r) {
            if (rhs(r) < 0.0) {
                for (std::size_t j = 0; j <= cols_; ++j) at(r, j) = -at(r, j);
            }
            at(r, num_real_ + r) = 1.0;
            basis_[r] = num_real_ + r;
        }
    }

    double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
    double& rhs(std::size_t r) { return data_[r * (cols_ + 1) + cols_]; }
    double rhs(std::size_t r) const { return data_[r * (cols_ + 1) + cols_]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t num_structural() const { return n_; }
    std::size_t num_real() const { return num_real_; }
    bool is_artificial(std::size_t column) const { return column >= num_real_; }
    std::size_t basis(std::size_t r) const { return basis_[r]; }

    void pivot(std::size_t pr, std::size_t pc) {
        const double pivot_value = at(pr, pc);
        for (std::size_t j = 0; j <= cols_; ++j) at(pr, j) /= pivot_value;
        at(pr, pc) = 1.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == pr) continue;
            const double factor = at(r, pc);
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) at(r, j) -= factor * at(pr, j);
            at(r, pc) = 0.0;
        }
        basis_[pr] = pc;
    }

    void drop_row(std::size_t r) {
        data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(r * (cols_ + 1)),
                    data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * (cols_ + 1)));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --rows_;
    }

private:
    void load_row(std::size_t r, const std::vector<double>& coefficients, double b) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (!std::isfinite(coefficients[j])) throw input_error("lp coefficient is not finite");
            at(r, j) = coefficients[j];
        }
        if (!std::isfinite(b)) throw input_error("lp right-hand side is not finite");
        rhs(r) = b;
    }

    std::size_t n_;
    std::size_t num_slacks_;
    std::size_t rows_;
    std::size_t num_real_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
    std::vector<std::size_t> basis_;
};

// Reduced costs for the current basis under cost vector `cost`.
std::vector<double> reduced_costs(const Tableau& t, const std::vector<double>& cost) {
    std::vector<double> d(cost);
    for (std::size_t r = 0; r < t.rows(); ++r) {
        const double cb = cost[t.basis(r)];
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j < t.cols(); ++j) d[j] -= cb * t.at(r, j);
    }
    return d;
}

enum class LoopResult { optimal, unbounded, iteration_cap };

// Bland: lowest eligible index enters; among minimal ratios the row whose
// basic variable has the lowest index leaves.
LoopResult simplex_loop(Tableau& t, std::vector<double>& d, bool allow_artificial,
                        std::size_t max_iterations, std::size_t& iterations) {
    while (true) {
        std::size_t entering = kNone;
        const std::size_t limit = allow_artificial ? t.cols() : t.num_real();
        for (std::size_t j = 0; j < limit; ++j) {
            if (d[j] < -kReducedCostTolerance) {
                entering = j;
                break;
            }
        }
        if (entering == kNone) return LoopResult::optimal;
        if (++iterations > max_iterations) return LoopResult::iteration_cap;

        std::size_t leaving = kNone;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < t.rows(); ++r) {
            const double a = t.at(r, entering);
            if (a <= kPivotTolerance) continue;
            const double ratio = t.rhs(r) / a;
            if (ratio < best_ratio - 1e-12 ||
                (ratio <= best_ratio + 1e-12 && (leaving == kNone || t.basis(r) < t.basis(leaving)))) {
                best_ratio = std::min(best_ratio, ratio);
                leaving = r;
            }
        }
        if (leaving == kNone) return LoopResult::unbounded;

        const double d_entering = d[entering];
        t.pivot(leaving, entering);
        for (std::size_t j = 0; j < t.cols(); ++j) d[j] -= d_entering * t.at(leaving, j);
        d[entering] = 0.0;
    }
}

}  // namespace

SimplexResult solve_standard_form(const StandardFormLP& lp) {
    if (lp.objective.size() != lp.num_vars) throw input_error("lp objective width mismatch");
    if (lp.eq_rows.size() != lp.eq_rhs.size() || lp.ub_rows.size() != lp.ub_rhs.size())
        throw input_error("lp row/rhs count mismatch");

    Tableau t(lp);
    SimplexResult result;
    const std::size_t max_iterations = 50 * (t.rows() + t.cols());

    // Phase one: minimize the sum of artificials.
    std::vector<double> phase1_cost(t.cols(), 0.0);
    for (std::size_t j = t.num_real(); j < t.cols(); ++j) phase1_cost[j] = 1.0;
    std::vector<double> d = reduced_costs(t, phase1_cost);
    switch (simplex_loop(t, d, /*allow_artificial=*/true, max_iterations, result.iterations)) {
        case LoopResult::optimal: break;
        case LoopResult::unbounded:  // cannot happen: phase-one objective is bounded below
        case LoopResult::iteration_cap:
            result.status = SolveStatus::numerical_failure;
            return result;
    }

    double infeasibility = 0.0;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        if (t.is_artificial(t.basis(r))) infeasibility += t.rhs(r);
    }
    if (infeasibility > kConstraintTolerance) {
        result.status = SolveStatus::infeasible;
        return result;
    }

    // Drive leftover degenerate artificials out of the basis; a row with no
    // real pivot candidate is redundant and gets dropped.
    for (std::size_t r = t.rows(); r-- > 0;) {
        if (!t.is_artificial(t.basis(r))) continue;
        std::size_t pivot_col = kNone;
        for (std::size_t j = 0; j < t.num_real(); ++j) {
            if (std::abs(t.at(r, j)) > kPivotTolerance) {
                pivot_col = j;
                break;
            }
        }
        if (pivot_col == kNone) {
            t.drop_row(r);
        } else {
            t.pivot(r, pivot_col);
        }
    }

    // Phase two over the real objective.
    std::vector<double> cost(t.cols(), 0.0);
    for (std::size_t j = 0; j < lp.num_vars; ++j) cost[j] = lp.objective[j];
    d = reduced_costs(t, cost);
    switch (simplex_loop(t, d, /*allow_artificial=*/false, max_iterations, result.iterations)) {
        case LoopResult::optimal: break;
        case LoopResult::unbounded:
            result.status = SolveStatus::unbounded;
            return result;
        case LoopResult::iteration_cap:
            result.status = SolveStatus::numerical_failure;
            return result;
    }

    std::vector<double> x(lp.num_vars, 0.0);
    for (std::size_t r = 0; r < t.rows(); ++r) {
        if (t.basis(r) < lp.num_vars) x[t.basis(r)] = t.rhs(r);
    }

    // The terminal point must actually satisfy the input system.
    for (std::size_t r = 0; r < lp.eq_rows.size(); ++r) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < lp.num_vars; ++j) lhs += lp.eq_rows[r][j] * x[j];
        if (std::abs(lhs - lp.eq_rhs[r]) > kConstraintTolerance * (1.0 + std::abs(lp.eq_rhs[r]))) {
            result.status = SolveStatus::numerical_failure;
            return result;
        }
    }
    for (std::size_t r = 0; r < lp.ub_rows.size(); ++r) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < lp.num_vars; ++j) lhs += lp.ub_rows[r][j] * x[j];
        if (lhs > lp.ub_rhs[r] + kConstraintTolerance * (1.0 + std::abs(lp.ub_rhs[r]))) {
            result.status = SolveStatus::numerical_failure;
            return result;
        }
    }

    result.status = SolveStatus::optimal;
    result.x = std::move(x);
    result.objective_value = 0.0;
    for (std::size_t j = 0; j < lp.num_vars; ++j)
        result.objective_value += lp.objective[j] * result.x[j];
    return result;
}

}  // namespace witness
