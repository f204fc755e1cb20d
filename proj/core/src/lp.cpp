#include "witness/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "witness/errors.hpp"
#include "witness/inversion.hpp"
#include "witness/realization.hpp"

namespace witness {

namespace {

constexpr double kMergeTolerance = 1e-12;

// Margin rows expressed as singleton targets: lambda_{i,s} = 1 per alphabet sign.
std::map<TailKey, double> margin_targets(int d, SignAlphabet alphabet) {
    std::map<TailKey, double> out;
    for (int i = 1; i <= d; ++i) {
        for (Sign s : alphabet_signs(alphabet)) out[make_key({i}, std::vector<Sign>{s})] = 1.0;
    }
    return out;
}

std::vector<double> incidence_row(const TailKey& target, const std::vector<TailKey>& generators,
                                  std::size_t row_width) {
    std::vector<double> row(row_width, 0.0);
    for (std::size_t c = 0; c < generators.size(); ++c) {
        if (extends(generators[c], target)) row[c] = 1.0;
    }
    return row;
}

}  // namespace

std::string_view solve_mode_name(SolveMode mode) {
    switch (mode) {
        case SolveMode::feasibility: return "feasibility";
        case SolveMode::min_total_mass: return "min_total_mass";
        case SolveMode::l1: return "l1";
    }
    return "unknown";
}

std::optional<SolveMode> solve_mode_from_name(std::string_view name) {
    if (name == "feasibility") return SolveMode::feasibility;
    if (name == "min_total_mass") return SolveMode::min_total_mass;
    if (name == "l1") return SolveMode::l1;
    return std::nullopt;
}

TargetSpec::TargetSpec(int d, SignAlphabet alphabet) : d_(d), alphabet_(alphabet) {
    if (d < 1) throw input_error("target spec: dimension must be positive");
}

void TargetSpec::add_target(TailKey key, double value) {
    validate_key_for(key, d_, alphabet_);
    if (!std::isfinite(value)) throw input_error("target value for " + format_key(key) + " is not finite");
    if (targets_.contains(key))
        throw input_error("duplicate target key " + format_key(key));
    targets_[std::move(key)] = value;
}

void TargetSpec::set_calibration_weight(TailKey key, double value) {
    validate_key_for(key, d_, alphabet_);
    if (!(value > 0.0))
        throw input_error("calibration weight for " + format_key(key) + " must be strictly positive");
    calibration_weights_[std::move(key)] = value;
}

void TargetSpec::set_cost(TailKey key, double value) {
    validate_key_for(key, d_, alphabet_);
    if (!(value >= 0.0)) throw input_error("cost for " + format_key(key) + " must be nonnegative");
    costs_[std::move(key)] = value;
}

void TargetSpec::set_p0(std::optional<double> p0) {
    if (p0) Threshold check(*p0);
    p0_ = p0;
}

LPModel build_model(const TargetSpec& spec) {
    LPModel model;
    model.mode = spec.mode();
    model.d = spec.dimension();
    model.alphabet = spec.alphabet();
    model.p0 = spec.p0();
    model.generator_keys = detail::all_keys(spec.dimension(), spec.alphabet());
    model.num_weights = model.generator_keys.size();

    const bool exact_mode = spec.mode() != SolveMode::l1;

    std::map<TailKey, double> exact_targets;
    if (spec.enforce_margins()) exact_targets = margin_targets(spec.dimension(), spec.alphabet());
    if (exact_mode) {
        for (const auto& [key, value] : spec.targets()) {
            auto it = exact_targets.find(key);
            if (it != exact_targets.end() && std::abs(it->second - value) > kMergeTolerance)
                throw input_error("target " + format_key(key) + " = " + std::to_string(value) +
                                  " conflicts with the exact margin constraint");
            exact_targets[key] = value;
        }
    } else {
        for (const auto& [key, value] : spec.targets()) model.soft_keys.push_back(key);
    }
    for (const auto& [key, value] : exact_targets) model.equality_keys.push_back(key);

    const std::size_t num_soft = model.soft_keys.size();
    const std::size_t total_vars = model.num_weights + (exact_mode ? 0 : 2 * num_soft);

    StandardFormLP& lp = model.problem;
    lp.num_vars = total_vars;
    lp.objective.assign(total_vars, 0.0);

    for (std::size_t r = 0; r < model.equality_keys.size(); ++r) {
        std::vector<double> row = incidence_row(model.equality_keys[r], model.generator_keys, total_vars);
        lp.eq_rows.push_back(std::move(row));
        lp.eq_rhs.push_back(exact_mode ? exact_targets.at(model.equality_keys[r]) : 1.0);
    }

    if (!exact_mode) {
        // Soft rows: sum(A w) - r+ + r- = target, objective sum of omega (r+ + r-).
        for (std::size_t s = 0; s < num_soft; ++s) {
            std::vector<double> row = incidence_row(model.soft_keys[s], model.generator_keys, total_vars);
            row[model.num_weights + s] = -1.0;
            row[model.num_weights + num_soft + s] = 1.0;
            lp.eq_rows.push_back(std::move(row));
            lp.eq_rhs.push_back(spec.targets().at(model.soft_keys[s]));

            double omega = 1.0;
            if (auto it = spec.calibration_weights().find(model.soft_keys[s]);
                it != spec.calibration_weights().end())
                omega = it->second;
            lp.objective[model.num_weights + s] = omega;
            lp.objective[model.num_weights + num_soft + s] = omega;
        }
    }

    if (spec.mode() == SolveMode::min_total_mass) {
        if (spec.costs().empty()) {
            std::fill(lp.objective.begin(), lp.objective.begin() + static_cast<std::ptrdiff_t>(model.num_weights), 1.0);
        } else {
            for (std::size_t c = 0; c < model.num_weights; ++c) {
                auto it = spec.costs().find(model.generator_keys[c]);
                lp.objective[c] = it == spec.costs().end() ? 0.0 : it->second;
            }
        }
    }

    if (model.p0) {
        std::vector<double> row(total_vars, 0.0);
        std::fill(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(model.num_weights), 1.0);
        lp.ub_rows.push_back(std::move(row));
        lp.ub_rhs.push_back(1.0 / *model.p0);
    }

    return model;
}

LPSolution solve(const LPModel& model) {
    const SimplexResult raw = solve_standard_form(model.problem);

    LPSolution solution{.status = raw.status,
                        .weights = WeightSystem(model.d, model.alphabet),
                        .objective_value = 0.0,
                        .iterations = raw.iterations,
                        .slack_plus = {},
                        .slack_minus = {},
                        .absolute_errors = {}};
    if (raw.status != SolveStatus::optimal) return solution;

    solution.objective_value = raw.objective_value;
    for (std::size_t c = 0; c < model.num_weights; ++c) {
        // Basic solutions carry sub-tolerance elimination dust; snap it away.
        const double value = raw.x[c];
        if (value > kSnapTolerance) solution.weights.set(model.generator_keys[c], value);
    }
    if (model.mode == SolveMode::l1) {
        const std::size_t num_soft = model.soft_keys.size();
        for (std::size_t s = 0; s < num_soft; ++s) {
            const double plus = raw.x[model.num_weights + s];
            const double minus = raw.x[model.num_weights + num_soft + s];
            solution.slack_plus[model.soft_keys[s]] = plus;
            solution.slack_minus[model.soft_keys[s]] = minus;
            solution.absolute_errors[model.soft_keys[s]] = plus + minus;
        }
    }
    return solution;
}

FeasibilityDecision feasibility_decision(const TargetSpec& spec) {
    if (spec.mode() != SolveMode::feasibility)
        throw input_error("feasibility_decision requires feasibility mode");
    LPSolution solution = solve(build_model(spec));
    const bool feasible = solution.status == SolveStatus::optimal;
    return FeasibilityDecision{feasible, std::move(solution)};
}

}  // namespace witness
