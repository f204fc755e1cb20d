#include "witness/realization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "witness/errors.hpp"
#include "witness/inversion.hpp"

namespace witness {

namespace {

// Reads solver dust in [-kWeightDustTolerance, 0) as zero; rejects lower.
double clean_weight(const TailKey& key, double value) {
    if (value < -kWeightDustTolerance)
        throw input_error("negative weight " + std::to_string(value) + " at key " + format_key(key));
    return value < 0.0 ? 0.0 : value;
}

}  // namespace

Threshold::Threshold(double p0) : p0_(p0) {
    if (!(p0 > 0.0 && p0 < 0.5))
        throw input_error("threshold p0 must lie strictly inside (0, 1/2), got " + std::to_string(p0));
}

TernaryMassTable::TernaryMassTable(int d, Threshold p0, double central_mass,
                                   std::map<TailKey, double> noncentral)
    : d_(d), p0_(p0.value()), central_(central_mass), noncentral_(std::move(noncentral)) {
    if (d < 1) throw input_error("mass table: dimension must be positive");
    if (central_ < -kMassTolerance)
        throw admissibility_error("central cell mass " + std::to_string(central_) + " is negative");
    for (const auto& [key, mass] : noncentral_) {
        validate_key_for(key, d_, SignAlphabet::lower_upper);
        if (mass < -kMassTolerance)
            throw input_error("negative cell mass at state " + format_key(key));
    }
}

double TernaryMassTable::mass(const TernaryState& state) const {
    if (state.dimension() != d_)
        throw input_error("state length does not match table dimension");
    auto key = state_to_key(state);
    if (!key) return central_;
    auto it = noncentral_.find(*key);
    return it == noncentral_.end() ? 0.0 : it->second;
}

double TernaryMassTable::total_mass() const {
    double total = central_;
    for (const auto& [key, mass] : noncentral_) total += mass;
    return total;
}

TernaryMassTable q_from_weights(const WeightSystem& w, Threshold p0) {
    std::map<TailKey, double> cells;
    double total_weight = 0.0;
    for (const auto& [key, value] : w.entries()) {
        const double weight = clean_weight(key, value);
        total_weight += weight;
        if (weight > 0.0) cells[key] = p0.value() * weight;
    }
    const double central = 1.0 - p0.value() * total_weight;
    if (central < -kMassTolerance)
        throw admissibility_error("central mass " + std::to_string(central) + " is negative at p0 = " +
                                  std::to_string(p0.value()) + "; the system is inadmissible at this scale");
    return TernaryMassTable(w.dimension(), p0, std::max(central, 0.0), std::move(cells));
}

WeightSystem weights_from_q(const TernaryMassTable& q) {
    WeightSystem w(q.dimension(), SignAlphabet::lower_upper);
    for (const auto& [key, mass] : q.noncentral()) w.set(key, mass / q.p0());
    return w;
}

double tail_total(const TernaryMassTable& q, const TailKey& target) {
    validate_key_for(target, q.dimension(), SignAlphabet::lower_upper);
    // A state restricted to the target coordinates matches the pattern exactly
    // when its key extends the target; the central cell never matches.
    double total = 0.0;
    for (const auto& [key, mass] : q.noncentral()) {
        if (extends(key, target)) total += mass;
    }
    return total;
}

MarginReport check_margins(const WeightSystem& w, double tol) {
    const int d = w.dimension();
    MarginReport report;
    report.alphabet = w.alphabet();
    report.upper_sums.assign(static_cast<std::size_t>(d), 0.0);
    if (w.alphabet() == SignAlphabet::lower_upper)
        report.lower_sums.assign(static_cast<std::size_t>(d), 0.0);

    for (const auto& [key, value] : w.entries()) {
        for (std::size_t i = 0; i < key.active.size(); ++i) {
            const auto coord = static_cast<std::size_t>(key.active[i] - 1);
            if (key.pattern[i] == Sign::upper) {
                report.upper_sums[coord] += value;
            } else {
                report.lower_sums[coord] += value;
            }
        }
    }

    report.ok = true;
    for (double sum : report.upper_sums)
        if (std::abs(sum - 1.0) > tol) report.ok = false;
    for (double sum : report.lower_sums)
        if (std::abs(sum - 1.0) > tol) report.ok = false;
    return report;
}

double admissible_p_max(const WeightSystem& w) {
    if (!w.nonnegative(0.0))
        throw input_error("admissible_p_max requires nonnegative weights (min is " +
                          std::to_string(w.min_value()) + ")");
    const double total = w.total_mass();
    if (total <= 0.0) return 0.5;
    return std::min(0.5, 1.0 / total);
}

MarginalizedSystem marginalize(const WeightSystem& w, std::span<const int> keep) {
    if (keep.empty()) throw input_error("marginalize: keep set must be nonempty");
    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    for (int coordinate : kept) {
        if (coordinate < 1 || coordinate > w.dimension())
            throw input_error("marginalize: coordinate " + std::to_string(coordinate) +
                              " outside 1.." + std::to_string(w.dimension()));
    }

    MarginalizedSystem out{WeightSystem(static_cast<int>(kept.size()), w.alphabet()), kept};
    for (const auto& [key, value] : w.entries()) {
        TailKey projected;
        for (std::size_t i = 0; i < key.active.size(); ++i) {
            auto it = std::lower_bound(kept.begin(), kept.end(), key.active[i]);
            if (it == kept.end() || *it != key.active[i]) continue;
            projected.active.push_back(static_cast<int>(it - kept.begin()) + 1);
            projected.pattern.push_back(key.pattern[i]);
        }
        // Generators fully outside the kept set project into the central cell.
        if (projected.active.empty()) continue;
        out.weights.add(projected, value);
    }
    return out;
}

TailFamily theoretical_lambda_at(const WeightSystem& w, double p, Threshold p0,
                                 std::span<const TailKey> targets) {
    if (!(p > 0.0 && p <= p0.value()))
        throw input_error("threshold p = " + std::to_string(p) + " outside (0, p0 = " +
                          std::to_string(p0.value()) + "]");
    // Constant in p throughout (0, p0] for the canonical ray geometry.
    return tail_values_from_weights(w, targets);
}

std::vector<double> vanishing_threshold_check(const WeightSystem& w,
                                              std::span<const double> p_sequence) {
    const double p_max = admissible_p_max(w);
    const double total = w.total_mass();
    std::vector<double> central;
    central.reserve(p_sequence.size());
    for (double p : p_sequence) {
        if (!(p > 0.0 && p < p_max))
            throw input_error("threshold p = " + std::to_string(p) + " outside (0, p_max = " +
                              std::to_string(p_max) + ")");
        central.push_back(1.0 - p * total);
    }
    return central;
}

std::vector<CellGeometryRow> cell_geometry(int d, Threshold p0) {
    if (d < 1) throw input_error("cell geometry: dimension must be positive");
    std::vector<CellGeometryRow> rows;
    rows.reserve(static_cast<std::size_t>(d));
    for (int k = 1; k <= d; ++k) {
        CellGeometryRow row;
        row.order = k;
        long long binom = 1;
        for (int i = 1; i <= k; ++i) binom = binom * (d - i + 1) / i;
        row.cell_count = binom * (1LL << k);
        row.support_dim = d - k + 1;
        row.contact_dim = d - k;
        row.inward_neighbors = k;
        row.outward_neighbors = 2 * (d - k);
        row.cell_volume =
            std::pow(p0.value(), k) * std::pow(1.0 - 2.0 * p0.value(), d - k);
        row.affected_coefficients = (1LL << k) - 1;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace witness
