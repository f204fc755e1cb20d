#pragma once

#include <map>
#include <optional>
#include <vector>

#include "witness/family.hpp"
#include "witness/simplex.hpp"

namespace witness {

enum class SolveMode { feasibility, min_total_mass, l1 };

std::string_view solve_mode_name(SolveMode mode);
std::optional<SolveMode> solve_mode_from_name(std::string_view name);

/// A (possibly partial) set of target coefficients plus solve options.
/// Duplicate target keys are rejected at insertion; in the exact modes a
/// singleton target that contradicts enforced margins is rejected when the
/// model is built.
class TargetSpec {
public:
    TargetSpec(int d, SignAlphabet alphabet);

    int dimension() const { return d_; }
    SignAlphabet alphabet() const { return alphabet_; }

    void add_target(TailKey key, double value);
    void set_calibration_weight(TailKey key, double value);  // l1 mode; must be > 0
    void set_cost(TailKey key, double value);                // min-mass mode; must be >= 0

    void set_mode(SolveMode mode) { mode_ = mode; }
    void set_enforce_margins(bool enforce) { enforce_margins_ = enforce; }
    void set_p0(std::optional<double> p0);

    SolveMode mode() const { return mode_; }
    bool enforce_margins() const { return enforce_margins_; }
    std::optional<double> p0() const { return p0_; }
    const std::map<TailKey, double>& targets() const { return targets_; }
    const std::map<TailKey, double>& calibration_weights() const { return calibration_weights_; }
    const std::map<TailKey, double>& costs() const { return costs_; }

private:
    int d_;
    SignAlphabet alphabet_;
    std::map<TailKey, double> targets_;
    std::map<TailKey, double> calibration_weights_;
    std::map<TailKey, double> costs_;
    SolveMode mode_ = SolveMode::feasibility;
    bool enforce_margins_ = true;
    std::optional<double> p0_;
};

/// Assembled constraint system. Variables are the generator weights first,
/// then the paired slack blocks r+ and r- in l1 mode. The admissibility
/// inequality sum(w) <= 1/p0 is present exactly when p0 is given.
struct LPModel {
    SolveMode mode = SolveMode::feasibility;
    int d = 0;
    SignAlphabet alphabet = SignAlphabet::lower_upper;
    std::optional<double> p0;
    std::vector<TailKey> generator_keys;
    std::vector<TailKey> equality_keys;  // exact rows, in canonical key order
    std::vector<TailKey> soft_keys;      // l1 target rows
    std::size_t num_weights = 0;
    StandardFormLP problem;
};

LPModel build_model(const TargetSpec& spec);

struct LPSolution {
    SolveStatus status = SolveStatus::numerical_failure;
    WeightSystem weights;
    double objective_value = 0.0;
    std::size_t iterations = 0;
    // l1 diagnostics, keyed by target
    std::map<TailKey, double> slack_plus;
    std::map<TailKey, double> slack_minus;
    std::map<TailKey, double> absolute_errors;
};

LPSolution solve(const LPModel& model);

struct FeasibilityDecision {
    bool feasible;
    LPSolution solution;
};

/// Feasibility verdict with a witness weight system when feasible. For
/// complete specifications this matches the direct-inversion verdict.
FeasibilityDecision feasibility_decision(const TargetSpec& spec);

}  // namespace witness
