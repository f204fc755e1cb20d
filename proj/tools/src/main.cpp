#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using witness::cli::Options;

void add_common_output(CLI::App* app, Options& options) {
    app->add_option("--out", options.out_path, "Write the primary output to this file");
}

void add_seed_options(CLI::App* app, Options& options) {
    app->add_option("--seed", options.seed,
                    "RNG seed (falls back to the spec file, then WITNESS_SEED, then 1)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"witness: signed tail-dependence compatibility toolkit"};
    app.require_subcommand(1);

    Options options;
    int exit_code = 0;
    const auto dispatch = [&](auto command) {
        return [&, command] { exit_code = command(options, std::cout, std::cerr); };
    };

    auto* invert = app.add_subcommand("invert", "Recover weights from a complete spec");
    invert->add_option("--spec", options.spec_path, "Spec file (JSON)")->required();
    invert->add_option("--p0", options.p0, "Report admissibility at this scale");
    add_common_output(invert, options);
    invert->callback(dispatch(witness::cli::cmd_invert));

    auto* solve = app.add_subcommand("solve", "Solve the feasibility / min-mass / l1 program");
    solve->add_option("--spec", options.spec_path, "Spec file (JSON)")->required();
    solve->add_option("--mode", options.mode, "feasibility, min_total_mass, or l1");
    solve->add_option("--p0", options.p0, "Admissibility scale (overrides the spec file)");
    add_common_output(solve, options);
    solve->callback(dispatch(witness::cli::cmd_solve));

    auto* realize = app.add_subcommand("realize", "Rescale weights to a ternary mass table");
    realize->add_option("--spec", options.spec_path, "Weights or complete spec file (JSON)")
        ->required();
    realize->add_option("--p0", options.p0, "Realization scale");
    realize->add_option("--format", options.format, "json (default) or csv");
    add_common_output(realize, options);
    realize->callback(dispatch(witness::cli::cmd_realize));

    auto* sample = app.add_subcommand("sample", "Draw canonical samples as CSV");
    sample->add_option("--spec", options.spec_path, "Weights or complete spec file (JSON)")
        ->required();
    sample->add_option("--p0", options.p0, "Realization scale");
    sample->add_option("--n,--samples", options.samples, "Number of samples");
    add_seed_options(sample, options);
    add_common_output(sample, options);
    sample->callback(dispatch(witness::cli::cmd_sample));

    auto* diagnose = app.add_subcommand("diagnose", "Variable-threshold Monte Carlo diagnostics");
    diagnose->add_option("--spec", options.spec_path, "Weights or complete spec file (JSON)")
        ->required();
    diagnose->add_option("--p0", options.p0, "Realization scale");
    diagnose->add_option("--p-grid", options.p_grid, "Comma-separated thresholds, e.g. 0.1,0.05")
        ->required();
    diagnose->add_option("--n,--samples", options.samples, "Number of samples (default 100000)");
    add_seed_options(diagnose, options);
    add_common_output(diagnose, options);
    diagnose->callback(dispatch(witness::cli::cmd_diagnose));

    auto* benchmark = app.add_subcommand("benchmark", "Five-dimensional reference validation row");
    benchmark->add_option("--alpha", options.alpha, "Family parameter")->required();
    benchmark->add_option("--p0", options.p0, "Realization scale (default 0.10)");
    benchmark->add_option("--runs", options.runs, "Monte Carlo runs (default 20)");
    benchmark->add_option("--samples", options.samples, "Samples per run (default 500000)");
    add_seed_options(benchmark, options);
    add_common_output(benchmark, options);
    benchmark->callback(dispatch(witness::cli::cmd_benchmark));

    auto* incidence = app.add_subcommand("incidence", "Export the dense incidence matrix as CSV");
    incidence->add_option("--d", options.d, "Dimension (at most 7)")->required();
    incidence->add_option("--signs", options.signs, "U or LU (default LU)");
    add_common_output(incidence, options);
    incidence->callback(dispatch(witness::cli::cmd_incidence));

    auto* hasse = app.add_subcommand("hasse", "Export the key order as a DOT graph");
    hasse->add_option("--d", options.d, "Dimension (at most 7)")->required();
    hasse->add_option("--signs", options.signs, "U or LU (default LU)");
    add_common_output(hasse, options);
    hasse->callback(dispatch(witness::cli::cmd_hasse));

    CLI11_PARSE(app, argc, argv);
    return exit_code;
}
