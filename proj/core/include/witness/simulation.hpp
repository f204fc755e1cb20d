#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "witness/family.hpp"
#include "witness/inversion.hpp"
#include "witness/lp.hpp"
#include "witness/realization.hpp"

namespace witness {

/// n samples from [0,1]^d, row-major.
struct SampleMatrix {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> values;

    double at(std::size_t row, std::size_t col) const { return values[row * d + col]; }
    std::span<const double> row(std::size_t r) const { return {values.data() + r * d, d}; }
};

/// Exact sampler for the canonical witness copula: draw the component label
/// (probabilities p0*w per generator, residual for the central component),
/// then one shared uniform for the active coordinates (reflected per sign)
/// and independent middle-interval uniforms for the rest. Deterministic for
/// a given seed.
SampleMatrix sample_canonical(const WeightSystem& w, Threshold p0, std::size_t n,
                              std::uint64_t seed);

/// Empirical signed tail estimator at threshold p:
///   (1/(n p)) * #{rows with U_j in the tau_j-tail box for all j in J}.
TailFamily empirical_lambda(const SampleMatrix& samples, double p,
                            std::span<const TailKey> targets);

struct DiagnosticsRow {
    double p = 0.0;
    TailFamily theoretical;
    TailFamily empirical;
    double max_abs_error = 0.0;          // over all targets
    double max_abs_error_nonzero = 0.0;  // over targets with nonzero theory
    double max_abs_leakage_zero = 0.0;   // empirical mass where theory is 0
};

struct DiagnosticsReport {
    double p0 = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<DiagnosticsRow> rows;
};

/// One canonical sample set evaluated across a grid of thresholds in
/// (0, p0]; the theoretical column is constant in p.
DiagnosticsReport run_variable_p_diagnostics(const WeightSystem& w, Threshold p0,
                                             std::span<const double> p_grid, std::size_t n,
                                             std::span<const TailKey> targets,
                                             std::uint64_t seed);

/// i.i.d. ternary states under the normalized cell masses.
std::vector<TernaryState> sample_grid_states(const TernaryMassTable& q, std::size_t n,
                                             std::uint64_t seed);

/// The complete signed five-dimensional reference family: unit opposite-sign
/// pairs on {1,2} and {3,4}, common value alpha on every pair and selected
/// triple involving coordinate 5, zeros at orders 4 and 5.
TailFamily benchmark_5d_family(double alpha);

/// Closed-form witness solution of the reference family: eight triples at
/// alpha, four pairs at 1-2*alpha, two coordinate-5 singletons at 1-4*alpha.
WeightSystem benchmark_expected_weights(double alpha);

struct BenchmarkMcSummary {
    std::size_t runs = 0;
    std::size_t samples = 0;
    double mean_max_error_at_p0 = 0.0;
    double sd_max_error_at_p0 = 0.0;
    double mean_max_error_at_half_p0 = 0.0;
    double sd_max_error_at_half_p0 = 0.0;
};

struct BenchmarkReport {
    double alpha = 0.0;
    double p0 = 0.0;
    RecoveryReport recovery;
    bool inversion_feasible = false;
    SolveStatus lp_status = SolveStatus::numerical_failure;
    bool lp_feasible = false;
    double max_abs_weight_diff_vs_closed_form = 0.0;
    double central_mass = 0.0;  // 1 - p0 * S(w), reported even when infeasible
    bool admissible_at_p0 = false;
    std::optional<BenchmarkMcSummary> mc;  // present only for admissible feasible rows
};

/// Full validation row for the reference family: inversion and LP verdicts,
/// closed-form comparison, central mass, and per-run Monte Carlo max-error
/// summaries over the nonzero order-2/3 targets at p = p0 and p = p0/2.
BenchmarkReport run_benchmark_report(double alpha, double p0, std::size_t runs,
                                     std::size_t samples, std::uint64_t seed);

}  // namespace witness
