#include "witness/simulation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <utility>

#include "witness/errors.hpp"
#include "witness/rng.hpp"

namespace witness {

namespace {

struct ComponentTable {
    std::vector<TailKey> keys;       // noncentral components in canonical order
    std::vector<double> cumulative;  // running probabilities, central last
};

ComponentTable component_table(const WeightSystem& w, double p0) {
    ComponentTable table;
    double running = 0.0;
    for (const auto& [key, value] : w.entries()) {
        if (value < -kWeightDustTolerance)
            throw input_error("negative weight at key " + format_key(key));
        const double weight = std::max(value, 0.0);
        running += p0 * weight;
        table.keys.push_back(key);
        table.cumulative.push_back(running);
    }
    const double central = 1.0 - running;
    if (central < -kMassTolerance)
        throw admissibility_error("central mass " + std::to_string(central) +
                                  " is negative; system is inadmissible at p0 = " + std::to_string(p0));
    table.cumulative.push_back(std::max(running + std::max(central, 0.0), running));
    return table;
}

// Boundary ties resolve toward the earlier component.
std::size_t pick_component(const ComponentTable& table, double u) {
    const auto it = std::lower_bound(table.cumulative.begin(), table.cumulative.end(), u);
    if (it == table.cumulative.end()) return table.cumulative.size() - 1;
    return static_cast<std::size_t>(it - table.cumulative.begin());
}

std::vector<std::uint64_t> tail_mask(const SampleMatrix& samples, int coordinate, Sign sign,
                                     double p) {
    const std::size_t words = (samples.n + 63) / 64;
    std::vector<std::uint64_t> mask(words, 0);
    const auto col = static_cast<std::size_t>(coordinate - 1);
    for (std::size_t r = 0; r < samples.n; ++r) {
        const double u = samples.at(r, col);
        const bool hit = sign == Sign::lower ? (u <= p) : (u >= 1.0 - p);
        if (hit) mask[r >> 6] |= (std::uint64_t{1} << (r & 63));
    }
    return mask;
}

double sample_mean(const std::vector<double>& xs) {
    double total = 0.0;
    for (double x : xs) total += x;
    return xs.empty() ? 0.0 : total / static_cast<double>(xs.size());
}

double sample_sd(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double total = 0.0;
    for (double x : xs) total += (x - mean) * (x - mean);
    return std::sqrt(total / static_cast<double>(xs.size() - 1));
}

}  // namespace

SampleMatrix sample_canonical(const WeightSystem& w, Threshold p0, std::size_t n,
                              std::uint64_t seed) {
    if (n < 1) throw input_error("sample count must be at least 1");
    const double scale = p0.value();
    const ComponentTable table = component_table(w, scale);
    const auto d = static_cast<std::size_t>(w.dimension());
    const double middle = 1.0 - 2.0 * scale;

    SampleMatrix samples{n, d, std::vector<double>(n * d)};
    Xoshiro256 rng(seed);
    for (std::size_t r = 0; r < n; ++r) {
        double* row = samples.values.data() + r * d;
        const std::size_t component = pick_component(table, rng.next_double());
        if (component == table.keys.size()) {
            for (std::size_t i = 0; i < d; ++i) row[i] = scale + middle * rng.next_double();
            continue;
        }
        const TailKey& key = table.keys[component];
        const double z = rng.next_double();
        std::size_t active_pos = 0;
        for (std::size_t i = 0; i < d; ++i) {
            const int coordinate = static_cast<int>(i) + 1;
            if (active_pos < key.active.size() && key.active[active_pos] == coordinate) {
                row[i] = key.pattern[active_pos] == Sign::lower ? scale * z : 1.0 - scale * z;
                ++active_pos;
            } else {
                row[i] = scale + middle * rng.next_double();
            }
        }
    }
    return samples;
}

TailFamily empirical_lambda(const SampleMatrix& samples, double p,
                            std::span<const TailKey> targets) {
    if (samples.n < 1) throw input_error("empirical estimator needs at least one sample");
    if (!(p > 0.0 && p < 0.5))
        throw input_error("threshold p = " + std::to_string(p) + " outside (0, 1/2)");

    const int d = static_cast<int>(samples.d);
    std::map<std::pair<int, Sign>, std::vector<std::uint64_t>> masks;
    const auto mask_for = [&](int coordinate, Sign sign) -> const std::vector<std::uint64_t>& {
        auto [it, inserted] = masks.try_emplace({coordinate, sign});
        if (inserted) it->second = tail_mask(samples, coordinate, sign, p);
        return it->second;
    };

    TailFamily out(d, SignAlphabet::lower_upper);
    const std::size_t words = (samples.n + 63) / 64;
    std::vector<std::uint64_t> joint(words);
    for (const TailKey& target : targets) {
        validate_key_for(target, d, SignAlphabet::lower_upper);
        joint = mask_for(target.active[0], target.pattern[0]);
        for (std::size_t i = 1; i < target.active.size(); ++i) {
            const auto& next = mask_for(target.active[i], target.pattern[i]);
            for (std::size_t word = 0; word < words; ++word) joint[word] &= next[word];
        }
        std::size_t hits = 0;
        for (std::uint64_t word : joint) hits += static_cast<std::size_t>(std::popcount(word));
        out.set(target, static_cast<double>(hits) / (static_cast<double>(samples.n) * p));
    }
    return out;
}

DiagnosticsReport run_variable_p_diagnostics(const WeightSystem& w, Threshold p0,
                                             std::span<const double> p_grid, std::size_t n,
                                             std::span<const TailKey> targets,
                                             std::uint64_t seed) {
    for (double p : p_grid) {
        if (!(p > 0.0 && p <= p0.value()))
            throw input_error("grid threshold p = " + std::to_string(p) + " outside (0, p0 = " +
                              std::to_string(p0.value()) + "]");
    }

    DiagnosticsReport report{.p0 = p0.value(), .samples = n, .seed = seed, .rows = {}};
    const SampleMatrix samples = sample_canonical(w, p0, n, seed);
    const TailFamily theory = tail_values_from_weights(w, targets);

    for (double p : p_grid) {
        DiagnosticsRow row{.p = p,
                           .theoretical = theory,
                           .empirical = empirical_lambda(samples, p, targets),
                           .max_abs_error = 0.0,
                           .max_abs_error_nonzero = 0.0,
                           .max_abs_leakage_zero = 0.0};
        for (const auto& [key, expected] : row.theoretical.entries()) {
            const double error = std::abs(row.empirical.at(key) - expected);
            row.max_abs_error = std::max(row.max_abs_error, error);
            if (std::abs(expected) > 1e-14) {
                row.max_abs_error_nonzero = std::max(row.max_abs_error_nonzero, error);
            } else {
                row.max_abs_leakage_zero =
                    std::max(row.max_abs_leakage_zero, std::abs(row.empirical.at(key)));
            }
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::vector<TernaryState> sample_grid_states(const TernaryMassTable& q, std::size_t n,
                                             std::uint64_t seed) {
    if (n < 1) throw input_error("sample count must be at least 1");

    std::vector<TernaryState> states;
    std::vector<double> cumulative;
    double running = 0.0;
    for (const auto& [key, mass] : q.noncentral()) {
        if (mass < -kMassTolerance) throw input_error("negative cell mass at " + format_key(key));
        running += std::max(mass, 0.0);
        states.push_back(key_to_state(key, q.dimension()));
        cumulative.push_back(running);
    }
    running += std::max(q.central_mass(), 0.0);
    states.push_back(TernaryState{std::string(static_cast<std::size_t>(q.dimension()), 'M')});
    cumulative.push_back(running);
    if (!(running > 0.0)) throw input_error("mass table has zero total mass");

    Xoshiro256 rng(seed);
    std::vector<TernaryState> draws;
    draws.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.next_double() * running;
        const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
        const std::size_t index = it == cumulative.end()
                                      ? cumulative.size() - 1
                                      : static_cast<std::size_t>(it - cumulative.begin());
        draws.push_back(states[index]);
    }
    return draws;
}

TailFamily benchmark_5d_family(double alpha) {
    if (!(alpha >= 0.0)) throw input_error("benchmark alpha must be nonnegative");
    TailFamily family(5, SignAlphabet::lower_upper);
    for (TailKey& key : detail::all_keys(5, SignAlphabet::lower_upper)) {
        const double value = key.order() == 1 ? 1.0 : 0.0;
        family.set(std::move(key), value);
    }

    family.set(make_key({1, 2}, "UL"), 1.0);
    family.set(make_key({1, 2}, "LU"), 1.0);
    family.set(make_key({3, 4}, "UL"), 1.0);
    family.set(make_key({3, 4}, "LU"), 1.0);
    for (int i = 1; i <= 4; ++i) {
        for (const char* pattern : {"LL", "LU", "UL", "UU"})
            family.set(make_key({i, 5}, pattern), alpha);
    }
    for (const auto& pair : {std::pair{1, 2}, std::pair{3, 4}}) {
        for (const char* pattern : {"ULU", "ULL", "LUU", "LUL"})
            family.set(make_key({pair.first, pair.second, 5}, pattern), alpha);
    }
    return family;
}

WeightSystem benchmark_expected_weights(double alpha) {
    if (!(alpha >= 0.0)) throw input_error("benchmark alpha must be nonnegative");
    WeightSystem w(5, SignAlphabet::lower_upper);
    for (const auto& pair : {std::pair{1, 2}, std::pair{3, 4}}) {
        for (const char* pattern : {"ULU", "ULL", "LUU", "LUL"})
            w.set(make_key({pair.first, pair.second, 5}, pattern), alpha);
        w.set(make_key({pair.first, pair.second}, "UL"), 1.0 - 2.0 * alpha);
        w.set(make_key({pair.first, pair.second}, "LU"), 1.0 - 2.0 * alpha);
    }
    w.set(make_key({5}, "U"), 1.0 - 4.0 * alpha);
    w.set(make_key({5}, "L"), 1.0 - 4.0 * alpha);
    return w;
}

BenchmarkReport run_benchmark_report(double alpha, double p0, std::size_t runs,
                                     std::size_t samples, std::uint64_t seed) {
    const Threshold threshold(p0);
    const TailFamily family = benchmark_5d_family(alpha);

    BenchmarkReport report{.alpha = alpha,
                           .p0 = p0,
                           .recovery = complete_recovery_report(family),
                           .inversion_feasible = false,
                           .lp_status = SolveStatus::numerical_failure,
                           .lp_feasible = false,
                           .max_abs_weight_diff_vs_closed_form = 0.0,
                           .central_mass = 0.0,
                           .admissible_at_p0 = false,
                           .mc = std::nullopt};
    report.inversion_feasible = report.recovery.success();

    TargetSpec spec(5, SignAlphabet::lower_upper);
    for (const auto& [key, value] : family.entries()) spec.add_target(key, value);
    spec.set_p0(p0);
    const FeasibilityDecision lp = feasibility_decision(spec);
    report.lp_status = lp.solution.status;
    report.lp_feasible = lp.feasible;

    const WeightSystem expected = benchmark_expected_weights(alpha);
    double diff = 0.0;
    for (const auto& [key, value] : expected.entries())
        diff = std::max(diff, std::abs(report.recovery.weights.at(key) - value));
    for (const auto& [key, value] : report.recovery.weights.entries())
        diff = std::max(diff, std::abs(value - expected.at(key)));
    report.max_abs_weight_diff_vs_closed_form = diff;

    report.central_mass = 1.0 - p0 * report.recovery.total_mass;
    report.admissible_at_p0 = report.central_mass >= -kMassTolerance;

    if (report.inversion_feasible && report.admissible_at_p0 && runs > 0 && samples > 0) {
        // Per-run max deviation over the nonzero order-2/3 targets only;
        // singleton margins are checked separately as exact-margin tests.
        std::vector<TailKey> watched;
        for (const auto& [key, value] : family.entries()) {
            if ((key.order() == 2 || key.order() == 3) && std::abs(value) > 1e-14)
                watched.push_back(key);
        }

        std::vector<double> errors_at_p0;
        std::vector<double> errors_at_half;
        for (std::size_t run = 0; run < runs; ++run) {
            const SampleMatrix draw =
                sample_canonical(report.recovery.weights, threshold, samples,
                                 substream_seed(seed, run));
            double worst_p0 = 0.0;
            double worst_half = 0.0;
            const TailFamily at_p0 = empirical_lambda(draw, p0, watched);
            const TailFamily at_half = empirical_lambda(draw, p0 / 2.0, watched);
            for (const TailKey& key : watched) {
                worst_p0 = std::max(worst_p0, std::abs(at_p0.at(key) - family.at(key)));
                worst_half = std::max(worst_half, std::abs(at_half.at(key) - family.at(key)));
            }
            errors_at_p0.push_back(worst_p0);
            errors_at_half.push_back(worst_half);
        }

        BenchmarkMcSummary mc{.runs = runs, .samples = samples};
        mc.mean_max_error_at_p0 = sample_mean(errors_at_p0);
        mc.sd_max_error_at_p0 = sample_sd(errors_at_p0, mc.mean_max_error_at_p0);
        mc.mean_max_error_at_half_p0 = sample_mean(errors_at_half);
        mc.sd_max_error_at_half_p0 = sample_sd(errors_at_half, mc.mean_max_error_at_half_p0);
        report.mc = mc;
    }
    return report;
}

}  // namespace witness
