#pragma once

#include <map>
#include <span>
#include <vector>

#include "witness/family.hpp"
#include "witness/keys.hpp"

namespace witness {

/// Masses this far below zero are treated as inadmissible rather than noise.
inline constexpr double kMassTolerance = 1e-12;
/// Weight values in [-kWeightDustTolerance, 0) are accepted as solver dust
/// and read as zero mass; anything lower is a genuine negative weight.
inline constexpr double kWeightDustTolerance = 1e-9;

/// The finite tail scale p0, strictly inside (0, 1/2).
class Threshold {
public:
    explicit Threshold(double p0);
    double value() const { return p0_; }

private:
    double p0_;
};

/// Probabilities on the ternary grid, stored sparsely: nonzero noncentral
/// cells keyed by their TailKey plus the central mass.
class TernaryMassTable {
public:
    TernaryMassTable(int d, Threshold p0, double central_mass, std::map<TailKey, double> noncentral);

    int dimension() const { return d_; }
    double p0() const { return p0_; }
    double central_mass() const { return central_; }
    const std::map<TailKey, double>& noncentral() const { return noncentral_; }

    double mass(const TernaryState& state) const;
    double total_mass() const;

private:
    int d_;
    double p0_;
    double central_;
    std::map<TailKey, double> noncentral_;
};

/// Rescale weights to cell masses: q_a = p0 * w for each noncentral cell,
/// central = 1 - p0 * S(w). Throws input_error on genuinely negative weights
/// and admissibility_error when the central mass falls below -1e-12.
TernaryMassTable q_from_weights(const WeightSystem& w, Threshold p0);

/// Inverse rescaling on noncentral cells: w = q_a / p0.
WeightSystem weights_from_q(const TernaryMassTable& q);

/// Total mass of all cells whose word agrees with the target pattern on the
/// target's active coordinates; equals p0 * lambda for tables built from
/// weights.
double tail_total(const TernaryMassTable& q, const TailKey& target);

/// Per-coordinate, per-sign weight sums; ok iff every sum over the governing
/// alphabet equals 1 within tol (exact uniform margins).
struct MarginReport {
    SignAlphabet alphabet;
    std::vector<double> lower_sums;  // empty for the upper-only alphabet
    std::vector<double> upper_sums;
    bool ok = false;
};

MarginReport check_margins(const WeightSystem& w, double tol);

/// min(1/2, 1/S(w)); S(w) = 0 maps to 1/2. Throws on negative weights.
double admissible_p_max(const WeightSystem& w);

/// Projection onto a coordinate subset. Kept coordinates are re-indexed to
/// 1..|keep|; index_map[new - 1] gives the original coordinate.
struct MarginalizedSystem {
    WeightSystem weights;
    std::vector<int> index_map;
};

MarginalizedSystem marginalize(const WeightSystem& w, std::span<const int> keep);

/// The signed tail family realized at any threshold p in (0, p0]: constant in
/// p for the canonical geometry, hence simply the forward map.
TailFamily theoretical_lambda_at(const WeightSystem& w, double p, Threshold p0,
                                 std::span<const TailKey> targets);

/// Central-mass sequence 1 - p_n * S(w) along a vanishing-threshold family.
/// Every p_n must lie strictly inside (0, p_max).
std::vector<double> vanishing_threshold_check(const WeightSystem& w,
                                              std::span<const double> p_sequence);

/// Descriptive cell-level geometry per active-set size; documentation only.
struct CellGeometryRow {
    int order = 0;
    long long cell_count = 0;
    int support_dim = 0;
    int contact_dim = 0;
    int inward_neighbors = 0;
    int outward_neighbors = 0;
    double cell_volume = 0.0;
    long long affected_coefficients = 0;
};

std::vector<CellGeometryRow> cell_geometry(int d, Threshold p0);

}  // namespace witness
