#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace witness::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitSolverTrouble = 3;

inline constexpr std::uint64_t kDefaultSeed = 1;

/// Shared command options; unused fields stay at their defaults.
struct Options {
    std::string spec_path;             // spec or weights document
    std::string out_path;              // empty writes to stdout
    std::string format = "json";       // realize: "json" or "csv"
    std::optional<double> p0;
    std::optional<double> alpha;
    std::optional<std::string> mode;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> runs;
    std::optional<std::size_t> samples;
    std::optional<std::string> p_grid;  // comma-separated thresholds
    std::optional<int> d;
    std::optional<std::string> signs;
};

int cmd_invert(const Options& options, std::ostream& out, std::ostream& err);
int cmd_solve(const Options& options, std::ostream& out, std::ostream& err);
int cmd_realize(const Options& options, std::ostream& out, std::ostream& err);
int cmd_sample(const Options& options, std::ostream& out, std::ostream& err);
int cmd_diagnose(const Options& options, std::ostream& out, std::ostream& err);
int cmd_benchmark(const Options& options, std::ostream& out, std::ostream& err);
int cmd_incidence(const Options& options, std::ostream& out, std::ostream& err);
int cmd_hasse(const Options& options, std::ostream& out, std::ostream& err);

}  // namespace witness::cli
