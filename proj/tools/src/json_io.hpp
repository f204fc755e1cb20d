#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "witness/family.hpp"
#include "witness/inversion.hpp"
#include "witness/lp.hpp"
#include "witness/realization.hpp"
#include "witness/simulation.hpp"

namespace witness::cli {

using nlohmann::json;

/// Parsed batch specification file; see README for the schema.
struct SpecFile {
    int d = 0;
    SignAlphabet alphabet = SignAlphabet::lower_upper;
    TargetSpec spec;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> runs;
    std::optional<std::size_t> samples;

    SpecFile() : spec(1, SignAlphabet::lower_upper) {}
};

json load_json_file(const std::filesystem::path& path);

/// Field-precise parsing: errors name the offending field, e.g. "targets[3]".
SpecFile parse_spec_file(const json& document);

/// A weights document: {"d", "signs", "weights": [{active, pattern, value}]}.
bool is_weights_document(const json& document);
WeightSystem parse_weights_document(const json& document);

json weights_to_json(const WeightSystem& weights);
json family_to_json(const TailFamily& family);
json margin_report_to_json(const MarginReport& report);
json recovery_report_to_json(const RecoveryReport& report);
json lp_solution_to_json(const LPSolution& solution, const LPModel& model);
json mass_table_to_json(const TernaryMassTable& table);
json diagnostics_to_json(const DiagnosticsReport& report);
json benchmark_report_to_json(const BenchmarkReport& report);

/// Weights document suitable for re-ingestion by realize/sample/diagnose.
json weights_document(const WeightSystem& weights);

}  // namespace witness::cli
