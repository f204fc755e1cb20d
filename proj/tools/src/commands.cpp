#include "commands.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>

#include "emitters.hpp"
#include "json_io.hpp"
#include "witness/errors.hpp"
#include "witness/incidence.hpp"

namespace witness::cli {

namespace {

int run_guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const admissibility_error& error) {
        err << "error: " << error.what() << "\n";
        return kExitInfeasible;
    } catch (const input_error& error) {
        err << "error: " << error.what() << "\n";
        return kExitInputError;
    } catch (const json::exception& error) {
        err << "error: " << error.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& error) {
        err << "error: " << error.what() << "\n";
        return kExitSolverTrouble;
    }
}

void write_payload(const std::string& out_path, const std::string& payload, std::ostream& out) {
    if (out_path.empty()) {
        out << payload;
        return;
    }
    std::ofstream file(out_path);
    if (!file) throw input_error("cannot write file: " + out_path);
    file << payload;
}

std::uint64_t resolve_seed(const Options& options, const std::optional<std::uint64_t>& file_seed) {
    if (options.seed) return *options.seed;
    if (file_seed) return *file_seed;
    if (const char* env = std::getenv("WITNESS_SEED")) {
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(env, env + std::string_view(env).size(), value);
        if (ec != std::errc{} || *ptr != '\0')
            throw input_error("WITNESS_SEED must be an unsigned integer");
        return value;
    }
    return kDefaultSeed;
}

TailFamily family_from_spec(const SpecFile& file) {
    TailFamily family(file.d, file.alphabet);
    for (const auto& [key, value] : file.spec.targets()) family.set(key, value);
    return family;
}

/// Weights from either a weights document or a complete spec (via inversion).
WeightSystem load_weights(const std::string& path) {
    const json document = load_json_file(path);
    if (is_weights_document(document)) return parse_weights_document(document);
    const SpecFile file = parse_spec_file(document);
    const RecoveryReport report = complete_recovery_report(family_from_spec(file));
    if (!report.success())
        throw admissibility_error("spec is not tail-level feasible (min weight " +
                                  std::to_string(report.min_weight) + "); cannot derive weights");
    return report.weights;
}

std::optional<double> document_p0(const std::string& path) {
    const json document = load_json_file(path);
    if (document.is_object() && document.contains("p0") && document["p0"].is_number())
        return document["p0"].get<double>();
    return std::nullopt;
}

Threshold resolve_p0(const Options& options, const std::string& input_path) {
    if (options.p0) return Threshold(*options.p0);
    if (const auto from_file = document_p0(input_path)) return Threshold(*from_file);
    throw input_error("p0 is required (pass --p0 or set it in the input file)");
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string token =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (token.empty()) throw input_error("empty entry in p grid '" + text + "'");
        char* end = nullptr;
        const double value = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size())
            throw input_error("malformed p grid entry '" + token + "'");
        grid.push_back(value);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (grid.empty()) throw input_error("p grid must contain at least one threshold");
    return grid;
}

}  // namespace

int cmd_invert(const Options& options, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        const SpecFile file = parse_spec_file(load_json_file(options.spec_path));
        const RecoveryReport report = complete_recovery_report(family_from_spec(file));

        json output = recovery_report_to_json(report);
        output["command"] = "invert";
        output["d"] = file.d;
        output["signs"] = std::string(alphabet_name(file.alphabet));
        const auto p0 = options.p0 ? options.p0 : file.spec.p0();
        if (p0) {
            Threshold check(*p0);
            output["p0"] = *p0;
            output["central_mass"] = 1.0 - *p0 * report.total_mass;
            output["admissible_at_p0"] = 1.0 - *p0 * report.total_mass >= -kMassTolerance;
        }
        write_payload(options.out_path, output.dump(2) + "\n", out);
        return report.success() ? kExitSuccess : kExitInfeasible;
    });
}

int cmd_solve(const Options& options, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        SpecFile file = parse_spec_file(load_json_file(options.spec_path));
        if (options.mode) {
            const auto mode = solve_mode_from_name(*options.mode);
            if (!mode) throw input_error("unknown mode '" + *options.mode + "'");
            file.spec.set_mode(*mode);
        }
        if (options.p0) file.spec.set_p0(*options.p0);

        const LPModel model = build_model(file.spec);
        const LPSolution solution = solve(model);

        json output = lp_solution_to_json(solution, model);
        output["command"] = "solve";
        output["d"] = file.d;
        output["signs"] = std::string(alphabet_name(file.alphabet));
        if (solution.status == SolveStatus::optimal) {
            // Echo the realized values of the requested targets for round trips.
            std::vector<TailKey> keys;
            for (const auto& [key, value] : file.spec.targets()) keys.push_back(key);
            output["targets_realized"] = family_to_json(tail_values_from_weights(solution.weights, keys));
            output["weights_document"] = weights_document(solution.weights);
        }
        write_payload(options.out_path, output.dump(2) + "\n", out);

        switch (solution.status) {
            case SolveStatus::optimal: return kExitSuccess;
            case SolveStatus::infeasible: return kExitInfeasible;
            case SolveStatus::unbounded:
            case SolveStatus::numerical_failure: return kExitSolverTrouble;
        }
        return kExitSolverTrouble;
    });
}

int cmd_realize(const Options& options, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        const WeightSystem weights = load_weights(options.spec_path);
        const Threshold p0 = resolve_p0(options, options.spec_path);
        const TernaryMassTable table = q_from_weights(weights, p0);
        if (options.format == "csv") {
            write_payload(options.out_path, mass_table_csv(table), out);
        } else if (options.format == "json") {
            write_payload(options.out_path, mass_table_to_json(table).dump(2) + "\n", out);
        } else {
            throw input_error("unknown format '" + options.format + "', expected json or csv");
        }
        return kExitSuccess;
    });
}

int cmd_sample(const Options& options, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        const json document = load_json_file(options.spec_path);
        std::optional<std::uint64_t> file_seed;
        std::optional<std::size_t> file_samples;
        if (!is_weights_document(document)) {
            const SpecFile file = parse_spec_file(document);
            file_seed = file.seed;
            file_samples = file.samples;
        }
        const WeightSystem weights = load_weights(options.spec_path);
        const Threshold p0 = resolve_p0(options, options.spec_path);
        const std::size_t n = options.samples ? *options.samples : file_samples.value_or(0);
        if (n < 1) throw input_error("sample count must be at least 1 (pass --n)");
        const std::uint64_t seed = resolve_seed(options, file_seed);

        const SampleMatrix samples = sample_canonical(weights, p0, n, seed);

        json meta;
        meta["command"] = "sample";
        meta["n"] = n;
        meta["d"] = samples.d;
        meta["p0"] = p0.value();
        meta["seed"] = seed;
        if (options.out_path.empty()) {
            err << meta.dump() << "\n";
            out << samples_csv(samples);
        } else {
            write_payload(options.out_path, samples_csv(samples), out);
            meta["out"] = options.out_path;
            out << meta.dump(2) << "\n";
        }
        return kExitSuccess;
    });
}

int cmd_diagnose(const Options& options, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        const json document = load_json_file(options.spec_path);
        std::optional<std::uint64_t> file_seed;
        std::optional<std::size_t> file_samples;
        if (!is_weights_document(document)) {
            const SpecFile file = parse_spec_file(document);
            file_seed = file.seed;
            file_samples = file.samples;
        }
        const WeightSystem weights = load_weights(options.spec_path);
        const Threshold p0 = resolve_p0(options, options.spec_path);
        if (!options.p_grid) throw input_error("--p-grid is required (e.g. 0.1,0.05)");
        const std::vector<double> grid = parse_grid(*options.p_grid);
        const std::size_t n = options.samples ? *options.samples : file_samples.value_or(100000);
        if (n < 1) throw input_error("sample count must be at least 1");
        const std::uint64_t seed = resolve_seed(options, file_seed);

        const auto targets = detail::all_keys(weights.dimension(), weights.alphabet());
        const DiagnosticsReport report =
            run_variable_p_diagnostics(weights, p0, grid, n, targets, seed);
        json output = diagnostics_to_json(report);
        output["command"] = "diagnose";
        write_payload(options.out_path, output.dump(2) + "\n", out);
        return kExitSuccess;
    });
}

int cmd_benchmark(const Options& options, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        if (!options.alpha) throw input_error("--alpha is required");
        const double p0 = options.p0.value_or(0.10);
        const std::size_t runs = options.runs.value_or(20);
        const std::size_t samples = options.samples.value_or(500000);
        const std::uint64_t seed = resolve_seed(options, std::nullopt);

        const BenchmarkReport report = run_benchmark_report(*options.alpha, p0, runs, samples, seed);
        json output = benchmark_report_to_json(report);
        output["command"] = "benchmark";
        output["seed"] = seed;
        write_payload(options.out_path, output.dump(2) + "\n", out);
        return kExitSuccess;
    });
}

int cmd_incidence(const Options& options, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        if (!options.d) throw input_error("--d is required");
        SignAlphabet alphabet = SignAlphabet::lower_upper;
        if (options.signs) {
            const auto parsed = alphabet_from_name(*options.signs);
            if (!parsed) throw input_error("--signs expects U or LU");
            alphabet = *parsed;
        }
        const IncidenceMatrix matrix = build_incidence_matrix(*options.d, alphabet);
        write_payload(options.out_path, incidence_csv(matrix), out);
        return kExitSuccess;
    });
}

int cmd_hasse(const Options& options, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        if (!options.d) throw input_error("--d is required");
        SignAlphabet alphabet = SignAlphabet::lower_upper;
        if (options.signs) {
            const auto parsed = alphabet_from_name(*options.signs);
            if (!parsed) throw input_error("--signs expects U or LU");
            alphabet = *parsed;
        }
        write_payload(options.out_path, hasse_dot(*options.d, alphabet), out);
        return kExitSuccess;
    });
}

}  // namespace witness::cli
