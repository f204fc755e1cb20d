#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace witness {

enum class SolveStatus { optimal, infeasible, unbounded, numerical_failure };

std::string_view solve_status_name(SolveStatus status);

/// min c.x  subject to  eq_rows.x = eq_rhs,  ub_rows.x <= ub_rhs,  x >= 0.
struct StandardFormLP {
    std::size_t num_vars = 0;
    std::vector<double> objective;
    std::vector<std::vector<double>> eq_rows;
    std::vector<double> eq_rhs;
    std::vector<std::vector<double>> ub_rows;
    std::vector<double> ub_rhs;
};

struct SimplexResult {
    SolveStatus status = SolveStatus::numerical_failure;
    std::vector<double> x;  // size num_vars when optimal
    double objective_value = 0.0;
    std::size_t iterations = 0;
};

inline constexpr double kConstraintTolerance = 1e-8;
inline constexpr double kReducedCostTolerance = 1e-9;
inline constexpr double kPivotTolerance = 1e-10;

/// Dense two-phase tableau simplex. Pivots follow Bland's rule (lowest
/// eligible variable index enters; ratio ties leave by lowest basic index),
/// which makes the solver deterministic and cycle-free. Feasibility is
/// established through phase-one artificial variables. The iteration cap is
/// 50 * (rows + columns) per phase; exceeding it reports numerical_failure,
/// never a silent wrong answer.
SimplexResult solve_standard_form(const StandardFormLP& lp);

}  // namespace witness
