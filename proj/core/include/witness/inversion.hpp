#pragma once

#include <span>

#include "witness/family.hpp"

namespace witness {

/// Recovered values below this magnitude are snapped to exactly 0.
inline constexpr double kSnapTolerance = 1e-12;
/// Verdict tolerance for nonnegativity and margin checks in reports.
inline constexpr double kReportTolerance = 1e-9;

/// Forward incidence map w -> lambda: each target value is the sum of the
/// weights of all generators extending it. Linear and free of any threshold
/// parameter.
TailFamily tail_values_from_weights(const WeightSystem& w, std::span<const TailKey> targets);

/// Forward map over the complete family of (d, alphabet).
TailFamily tail_values_from_weights(const WeightSystem& w);

/// Triangular inversion of a complete family by descending active-set size:
///   w[I,sigma] = lambda[I,sigma] - sum of w over strict sign-extensions.
/// Throws input_error when coefficients are missing.
WeightSystem invert_complete(const TailFamily& lambda);

/// Direct Moebius transform on the signed ternary poset:
///   w[I,sigma] = sum over sign-extensions (K,rho) of (-1)^(|K|-|I|) lambda[K,rho].
/// Agrees with invert_complete; implemented independently.
WeightSystem mobius_transform(const TailFamily& lambda);

/// Boolean-lattice Moebius inversion for upper-only families:
///   w[I] = sum over supersets K of (-1)^(|K|-|I|) lambda[K].
WeightSystem invert_unsigned_upper(const TailFamily& lambda);

/// Complete-case diagnostic: recovered weights, validity verdicts, residual
/// from re-applying the forward map, and the admissible scale bound.
struct RecoveryReport {
    WeightSystem weights;
    double min_weight = 0.0;
    bool nonnegative = false;
    bool margins_ok = false;
    double max_abs_residual = 0.0;
    double total_mass = 0.0;
    double p_max = 0.5;  // min(1/2, 1/S(w)); S(w) = 0 maps to 1/2

    bool success() const { return nonnegative && margins_ok; }
};

RecoveryReport complete_recovery_report(const TailFamily& lambda, double tol = kReportTolerance);

}  // namespace witness
