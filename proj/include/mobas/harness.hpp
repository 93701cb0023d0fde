#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mobas/bas.hpp"
#include "mobas/benchmarks.hpp"
#include "mobas/mobas.hpp"

namespace mobas::harness {

enum class TraceGranularity { outer, inner, both };

struct ExperimentConfig {
    ProblemId problem = ProblemId::sch;
    std::optional<std::size_t> dimension;
    std::size_t points = 200;       // M
    std::size_t iterations = 500;   // N
    std::optional<double> initial_step; // unset: a tenth of the widest box side
    double antenna_ratio = 5.0;
    double attenuation = 0.95;
    double antenna_floor = 0.01;
    std::uint64_t seed = 0;
    std::size_t max_outer_runs = 0; // 0: 20 * points
    std::size_t threads = 1;
    TraceGranularity trace = TraceGranularity::outer;
    bas::SignConvention sign = bas::SignConvention::minus;
    std::filesystem::path output_dir = "run";

    // Resolves defaults against the problem's box.
    [[nodiscard]] auto mobas_params(MultiObjectiveProblem const& problem) const -> MobasParams;
};

struct RunReport {
    ExperimentConfig config;
    MobasParams params; // resolved values actually used
    std::size_t dimension = 0;
    std::optional<double> final_ad;
    std::optional<double> domain_fraction;
    double solve_seconds = 0.0;
    double metric_seconds = 0.0;
    std::size_t outer_runs = 0;
    std::size_t archive_size = 0;
    bool truncated = false;
    RunStats stats;
};

// Solves, writes front.csv, trace_outer.csv, report.txt and, for inner/both
// granularity, trace_inner.csv into config.output_dir. Throws before solving
// when the directory cannot be written.
auto run_experiment(ExperimentConfig const& config) -> RunReport;
auto run_experiment(ExperimentConfig const& config, MultiObjectiveProblem const& problem) -> RunReport;

// Archive CSV: header f1,...,fK,x1,...,xk followed by one row per entry.
void write_front_csv(std::ostream& out, pareto::ParetoArchive const& archive);

struct FrontFile {
    std::size_t objective_count = 0;
    std::vector<Vector> objectives;
    std::vector<Vector> decisions;
};

// Parses an archive CSV. Errors name the offending line.
[[nodiscard]] auto read_front_csv(std::filesystem::path const& path) -> FrontFile;

// Recomputes AD from the file alone.
[[nodiscard]] auto evaluate_front_file(std::filesystem::path const& path, ProblemId problem) -> double;

[[nodiscard]] auto format_report(RunReport const& report) -> std::string;
[[nodiscard]] auto format_number(double v) -> std::string;

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_truncated = 3;

auto cli_main(int argc, char const* const* argv) -> int;

} // namespace mobas::harness
