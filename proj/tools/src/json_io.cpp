#include "json_io.hpp"

#include <fstream>

#include "witness/errors.hpp"

namespace witness::cli {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw input_error(where + ": " + what);
}

TailKey parse_key_object(const json& node, const std::string& where) {
    if (!node.is_object()) fail(where, "expected an object with active/pattern fields");
    if (!node.contains("active") || !node["active"].is_array())
        fail(where, "missing integer array field 'active'");
    if (!node.contains("pattern") || !node["pattern"].is_string())
        fail(where, "missing string field 'pattern'");
    std::vector<int> active;
    for (const json& coordinate : node["active"]) {
        if (!coordinate.is_number_integer()) fail(where, "'active' entries must be integers");
        active.push_back(coordinate.get<int>());
    }
    try {
        return make_key(std::move(active), node["pattern"].get<std::string>());
    } catch (const input_error& error) {
        fail(where, error.what());
    }
}

double parse_value(const json& node, const std::string& where) {
    if (!node.contains("value") || !node["value"].is_number())
        fail(where, "missing numeric field 'value'");
    return node["value"].get<double>();
}

json key_entry(const TailKey& key, double value) {
    json node;
    node["active"] = key.active;
    std::string pattern;
    for (Sign s : key.pattern) pattern += sign_char(s);
    node["pattern"] = pattern;
    node["key"] = format_key(key);
    node["value"] = value;
    return node;
}

json map_to_json(const std::map<TailKey, double>& entries) {
    json out = json::array();
    for (const auto& [key, value] : entries) out.push_back(key_entry(key, value));
    return out;
}

}  // namespace

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& error) {
        throw input_error(path.string() + ": " + error.what());
    }
}

SpecFile parse_spec_file(const json& document) {
    if (!document.is_object()) fail("spec", "top level must be a JSON object");
    if (!document.contains("d") || !document["d"].is_number_integer())
        fail("spec", "missing integer field 'd'");
    const int d = document["d"].get<int>();
    if (d < 2) fail("d", "dimension must be at least 2");

    SignAlphabet alphabet = SignAlphabet::lower_upper;
    if (document.contains("signs")) {
        if (!document["signs"].is_string()) fail("signs", "expected \"U\" or \"LU\"");
        const auto parsed = alphabet_from_name(document["signs"].get<std::string>());
        if (!parsed) fail("signs", "expected \"U\" or \"LU\"");
        alphabet = *parsed;
    }

    SpecFile file;
    file.d = d;
    file.alphabet = alphabet;
    file.spec = TargetSpec(d, alphabet);

    if (document.contains("targets")) {
        if (!document["targets"].is_array()) fail("targets", "expected an array");
        std::size_t index = 0;
        for (const json& node : document["targets"]) {
            const std::string where = "targets[" + std::to_string(index++) + "]";
            TailKey key = parse_key_object(node, where);
            const double value = parse_value(node, where);
            try {
                file.spec.add_target(std::move(key), value);
            } catch (const input_error& error) {
                fail(where, error.what());
            }
        }
    }

    if (document.contains("p0")) {
        if (!document["p0"].is_number()) fail("p0", "expected a number");
        try {
            file.spec.set_p0(document["p0"].get<double>());
        } catch (const input_error& error) {
            fail("p0", error.what());
        }
    }
    if (document.contains("mode")) {
        if (!document["mode"].is_string()) fail("mode", "expected a string");
        const auto mode = solve_mode_from_name(document["mode"].get<std::string>());
        if (!mode) fail("mode", "expected feasibility, min_total_mass, or l1");
        file.spec.set_mode(*mode);
    }
    if (document.contains("enforce_margins")) {
        if (!document["enforce_margins"].is_boolean()) fail("enforce_margins", "expected a boolean");
        file.spec.set_enforce_margins(document["enforce_margins"].get<bool>());
    }

    const auto parse_keyed_list = [&](const char* field, auto&& apply) {
        if (!document.contains(field)) return;
        if (!document[field].is_array()) fail(field, "expected an array");
        std::size_t index = 0;
        for (const json& node : document[field]) {
            const std::string where = std::string(field) + "[" + std::to_string(index++) + "]";
            TailKey key = parse_key_object(node, where);
            const double value = parse_value(node, where);
            try {
                apply(std::move(key), value);
            } catch (const input_error& error) {
                fail(where, error.what());
            }
        }
    };
    parse_keyed_list("calibration_weights",
                     [&](TailKey key, double value) { file.spec.set_calibration_weight(std::move(key), value); });
    parse_keyed_list("costs", [&](TailKey key, double value) { file.spec.set_cost(std::move(key), value); });

    const auto parse_count = [&](const char* field, auto& slot) {
        if (!document.contains(field)) return;
        if (!document[field].is_number_integer() || document[field].get<long long>() < 0)
            fail(field, "expected a nonnegative integer");
        slot = document[field].get<std::uint64_t>();
    };
    parse_count("seed", file.seed);
    parse_count("runs", file.runs);
    parse_count("samples", file.samples);
    return file;
}

bool is_weights_document(const json& document) {
    return document.is_object() && document.contains("weights");
}

WeightSystem parse_weights_document(const json& document) {
    if (!document.is_object()) fail("weights", "top level must be a JSON object");
    if (!document.contains("d") || !document["d"].is_number_integer())
        fail("weights", "missing integer field 'd'");
    const int d = document["d"].get<int>();
    SignAlphabet alphabet = SignAlphabet::lower_upper;
    if (document.contains("signs")) {
        const auto parsed = alphabet_from_name(document["signs"].get<std::string>());
        if (!parsed) fail("signs", "expected \"U\" or \"LU\"");
        alphabet = *parsed;
    }
    WeightSystem weights(d, alphabet);
    if (!document.contains("weights") || !document["weights"].is_array())
        fail("weights", "expected an array field 'weights'");
    std::size_t index = 0;
    for (const json& node : document["weights"]) {
        const std::string where = "weights[" + std::to_string(index++) + "]";
        TailKey key = parse_key_object(node, where);
        const double value = parse_value(node, where);
        try {
            weights.add(key, value);
        } catch (const input_error& error) {
            fail(where, error.what());
        }
    }
    return weights;
}

json weights_to_json(const WeightSystem& weights) {
    json out = json::array();
    for (const auto& [key, value] : weights.entries()) {
        if (value != 0.0) out.push_back(key_entry(key, value));
    }
    return out;
}

json family_to_json(const TailFamily& family) { return map_to_json(family.entries()); }

json margin_report_to_json(const MarginReport& report) {
    json out;
    out["ok"] = report.ok;
    out["upper_sums"] = report.upper_sums;
    if (!report.lower_sums.empty()) out["lower_sums"] = report.lower_sums;
    return out;
}

json recovery_report_to_json(const RecoveryReport& report) {
    json out;
    out["success"] = report.success();
    out["nonnegative"] = report.nonnegative;
    out["margins_ok"] = report.margins_ok;
    out["min_weight"] = report.min_weight;
    out["max_abs_residual"] = report.max_abs_residual;
    out["total_mass"] = report.total_mass;
    out["p_max"] = report.p_max;
    out["weights"] = weights_to_json(report.weights);
    return out;
}

json lp_solution_to_json(const LPSolution& solution, const LPModel& model) {
    json out;
    out["status"] = std::string(solve_status_name(solution.status));
    out["mode"] = std::string(solve_mode_name(model.mode));
    out["iterations"] = solution.iterations;
    if (solution.status != SolveStatus::optimal) return out;

    out["objective_value"] = solution.objective_value;
    out["weights"] = weights_to_json(solution.weights);
    out["total_mass"] = solution.weights.total_mass();
    out["margins"] = margin_report_to_json(check_margins(solution.weights, 1e-6));
    if (model.p0) {
        out["p0"] = *model.p0;
        out["central_mass"] = 1.0 - *model.p0 * solution.weights.total_mass();
    }
    if (model.mode == SolveMode::l1) {
        out["slack_plus"] = map_to_json(solution.slack_plus);
        out["slack_minus"] = map_to_json(solution.slack_minus);
        out["absolute_errors"] = map_to_json(solution.absolute_errors);
    }
    return out;
}

json mass_table_to_json(const TernaryMassTable& table) {
    json out;
    out["d"] = table.dimension();
    out["p0"] = table.p0();
    out["central_mass"] = table.central_mass();
    json cells = json::array();
    for (const auto& [key, mass] : table.noncentral()) {
        json cell;
        cell["state"] = key_to_state(key, table.dimension()).word;
        cell["key"] = format_key(key);
        cell["mass"] = mass;
        cells.push_back(std::move(cell));
    }
    out["cells"] = std::move(cells);
    return out;
}

json diagnostics_to_json(const DiagnosticsReport& report) {
    json out;
    out["p0"] = report.p0;
    out["samples"] = report.samples;
    out["seed"] = report.seed;
    json rows = json::array();
    for (const DiagnosticsRow& row : report.rows) {
        json node;
        node["p"] = row.p;
        node["max_abs_error"] = row.max_abs_error;
        node["max_abs_error_nonzero"] = row.max_abs_error_nonzero;
        node["max_abs_leakage_zero"] = row.max_abs_leakage_zero;
        node["theoretical"] = family_to_json(row.theoretical);
        node["empirical"] = family_to_json(row.empirical);
        rows.push_back(std::move(node));
    }
    out["rows"] = std::move(rows);
    return out;
}

json benchmark_report_to_json(const BenchmarkReport& report) {
    json out;
    out["alpha"] = report.alpha;
    out["p0"] = report.p0;
    out["inversion_feasible"] = report.inversion_feasible;
    out["lp_status"] = std::string(solve_status_name(report.lp_status));
    out["lp_feasible"] = report.lp_feasible;
    out["min_recovered_weight"] = report.recovery.min_weight;
    out["max_abs_weight_diff_vs_closed_form"] = report.max_abs_weight_diff_vs_closed_form;
    out["central_mass"] = report.central_mass;
    out["admissible_at_p0"] = report.admissible_at_p0;
    out["recovery"] = recovery_report_to_json(report.recovery);
    if (report.mc) {
        json mc;
        mc["runs"] = report.mc->runs;
        mc["samples"] = report.mc->samples;
        mc["mean_max_error_at_p0"] = report.mc->mean_max_error_at_p0;
        mc["sd_max_error_at_p0"] = report.mc->sd_max_error_at_p0;
        mc["mean_max_error_at_half_p0"] = report.mc->mean_max_error_at_half_p0;
        mc["sd_max_error_at_half_p0"] = report.mc->sd_max_error_at_half_p0;
        out["mc"] = std::move(mc);
    } else {
        out["mc"] = nullptr;
    }
    return out;
}

json weights_document(const WeightSystem& weights) {
    json out;
    out["d"] = weights.dimension();
    out["signs"] = std::string(alphabet_name(weights.alphabet()));
    out["weights"] = weights_to_json(weights);
    return out;
}

}  // namespace witness::cli
