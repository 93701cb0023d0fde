#include "mobas/harness.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "mobas/pareto.hpp"

namespace mobas::harness {

namespace {

using Clock = std::chrono::steady_clock;

auto sign_name(bas::SignConvention s) -> std::string_view
{
    return s == bas::SignConvention::minus ? "minus" : "printed";
}

auto trace_name(TraceGranularity t) -> std::string_view
{
    switch (t) {
    case TraceGranularity::outer: return "outer";
    case TraceGranularity::inner: return "inner";
    case TraceGranularity::both: return "both";
    }
    return "outer";
}

auto open_for_write(std::filesystem::path const& path) -> std::ofstream
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

void prepare_output_dir(std::filesystem::path const& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
    }
    // A failed open here means nothing would be written after the solve.
    auto const probe = dir / "report.txt";
    std::ofstream out(probe, std::ios::app);
    if (!out) {
        throw std::runtime_error("output directory '" + dir.string() + "' is not writable");
    }
}

auto split_csv(std::string_view line) -> std::vector<std::string_view>
{
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        auto const comma = line.find(',', start);
        cells.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) { break; }
        start = comma + 1;
    }
    return cells;
}

auto parse_double(std::string_view cell, double& out) -> bool
{
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) { cell.remove_prefix(1); }
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r')) { cell.remove_suffix(1); }
    if (cell.empty()) { return false; }
    if (cell.front() == '+') { cell.remove_prefix(1); }
    auto const [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return ec == std::errc {} && ptr == cell.data() + cell.size();
}

} // namespace

auto ExperimentConfig::mobas_params(MultiObjectiveProblem const& problem) const -> MobasParams
{
    MobasParams p;
    p.target_size = points;
    p.seed = seed;
    p.max_outer_runs = max_outer_runs;
    p.threads = threads;
    p.bas.initial_step = initial_step.value_or(default_initial_step(problem.bounds));
    p.bas.antenna_ratio = antenna_ratio;
    p.bas.attenuation = attenuation;
    p.bas.antenna_floor = antenna_floor;
    p.bas.max_iterations = iterations;
    p.bas.sign = sign;
    return p;
}

auto format_number(double v) -> std::string
{
    return fmt::format("{}", v);
}

void write_front_csv(std::ostream& out, pareto::ParetoArchive const& archive)
{
    auto const& entries = archive.entries();
    auto const objectives = entries.empty() ? std::size_t { 2 } : entries.front().objectives.size();
    auto const variables = entries.empty() ? std::size_t { 0 } : entries.front().x.size();
    for (std::size_t k = 0; k < objectives; ++k) { fmt::print(out, "{}f{}", k == 0 ? "" : ",", k + 1); }
    for (std::size_t j = 0; j < variables; ++j) { fmt::print(out, ",x{}", j + 1); }
    out << '\n';
    for (auto const& e : entries) {
        for (std::size_t k = 0; k < e.objectives.size(); ++k) {
            fmt::print(out, "{}{}", k == 0 ? "" : ",", e.objectives[k]);
        }
        for (auto v : e.x) { fmt::print(out, ",{}", v); }
        out << '\n';
    }
}

auto read_front_csv(std::filesystem::path const& path) -> FrontFile
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open front file '" + path.string() + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error(path.string() + ": empty file, expected header f1,f2,x1,...");
    }
    if (!line.empty() && line.back() == '\r') { line.pop_back(); }

    FrontFile file;
    auto const header = split_csv(line);
    std::size_t col = 0;
    while (col < header.size() && header[col] == fmt::format("f{}", col + 1)) { ++col; }
    file.objective_count = col;
    for (std::size_t j = 0; col < header.size(); ++col, ++j) {
        if (header[col] != fmt::format("x{}", j + 1)) {
            throw std::runtime_error(fmt::format("{}: line 1: unexpected header column '{}'", path.string(),
                                                 header[col]));
        }
    }
    if (file.objective_count < 2) {
        throw std::runtime_error(path.string() + ": line 1: header must start with f1,f2");
    }

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') { line.pop_back(); }
        if (line.empty()) { continue; }
        auto const cells = split_csv(line);
        if (cells.size() != header.size()) {
            throw std::runtime_error(fmt::format("{}: line {}: expected {} columns, found {}", path.string(), line_no,
                                                 header.size(), cells.size()));
        }
        Vector values(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!parse_double(cells[c], values[c])) {
                throw std::runtime_error(fmt::format("{}: line {}: column {} is not a number: '{}'", path.string(),
                                                     line_no, header[c], cells[c]));
            }
        }
        auto const split = static_cast<std::ptrdiff_t>(file.objective_count);
        file.objectives.emplace_back(values.begin(), values.begin() + split);
        file.decisions.emplace_back(values.begin() + split, values.end());
    }
    return file;
}

auto evaluate_front_file(std::filesystem::path const& path, ProblemId problem) -> double
{
    if (problem == ProblemId::custom) {
        throw std::invalid_argument("eval: custom problems have no analytic front, AD is unsupported");
    }
    auto const file = read_front_csv(path);
    if (file.objectives.empty()) {
        throw std::runtime_error(path.string() + ": no data rows");
    }
    std::vector<pareto::Point2> pts;
    pts.reserve(file.objectives.size());
    for (auto const& f : file.objectives) { pts.emplace_back(f[0], f[1]); }
    return pareto::ad_error(pts, front_model(problem));
}

auto run_experiment(ExperimentConfig const& config) -> RunReport
{
    if (config.problem == ProblemId::custom) {
        throw std::invalid_argument("run_experiment: custom problems must be passed explicitly");
    }
    return run_experiment(config, make_problem(config.problem, config.dimension));
}

auto run_experiment(ExperimentConfig const& config, MultiObjectiveProblem const& problem) -> RunReport
{
    RunReport report;
    report.config = config;
    report.params = config.mobas_params(problem);
    report.dimension = problem.dimension();
    report.params.validate();
    prepare_output_dir(config.output_dir);

    auto const has_front = problem.id != ProblemId::custom;
    MobasOptions options;
    if (has_front) { options.front = front_model(problem.id); }
    options.record_inner_trace = config.trace != TraceGranularity::outer;

    auto result = mobas_solve(problem, report.params, options);

    report.metric_seconds = result.stats.metric_seconds;
    if (has_front && result.archive.count() > 0) {
        auto const t0 = Clock::now();
        auto const pts = pareto::objective_points(result.archive);
        report.final_ad = pareto::ad_error(pts, *options.front);
        report.domain_fraction = pareto::domain_fraction(pts, *options.front);
        report.metric_seconds += std::chrono::duration<double>(Clock::now() - t0).count();
    }
    report.solve_seconds = result.stats.solve_seconds;
    report.outer_runs = result.stats.outer_runs;
    report.archive_size = result.archive.count();
    report.truncated = result.stats.truncated;

    {
        auto out = open_for_write(config.output_dir / "front.csv");
        write_front_csv(out, result.archive);
    }
    {
        auto out = open_for_write(config.output_dir / "trace_outer.csv");
        out << "outer_run,archive_size,ad\n";
        for (auto const& r : result.stats.runs) {
            fmt::print(out, "{},{},{}\n", r.run, r.archive_size, r.ad ? format_number(*r.ad) : "nan");
        }
    }
    if (options.record_inner_trace) {
        auto out = open_for_write(config.output_dir / "trace_inner.csv");
        out << "outer_run,iteration,best_phi\n";
        for (auto const& r : result.stats.runs) {
            for (std::size_t i = 0; i < r.inner_trace.size(); ++i) {
                fmt::print(out, "{},{},{}\n", r.run, i + 1, r.inner_trace[i]);
            }
        }
    }
    report.stats = std::move(result.stats);
    {
        auto out = open_for_write(config.output_dir / "report.txt");
        out << format_report(report);
    }
    return report;
}

auto format_report(RunReport const& report) -> std::string
{
    auto const& c = report.config;
    auto const& p = report.params;
    auto const& s = report.stats;
    std::ostringstream os;
    fmt::print(os, "# MOBAS run report\n");
    fmt::print(os, "problem: {}\n", to_string(c.problem));
    fmt::print(os, "dimension: {}\n", report.dimension);
    fmt::print(os, "points: {}\n", p.target_size);
    fmt::print(os, "iterations: {}\n", p.bas.max_iterations);
    fmt::print(os, "step0: {}{}\n", format_number(p.bas.initial_step),
               c.initial_step ? "" : " (default: 0.1 x widest box side)");
    fmt::print(os, "ratio: {}\n", format_number(p.bas.antenna_ratio));
    fmt::print(os, "alpha: {}\n", format_number(p.bas.attenuation));
    fmt::print(os, "antenna_floor: {}\n", format_number(p.bas.antenna_floor));
    fmt::print(os, "seed: {}\n", p.seed);
    fmt::print(os, "max_outer_runs: {}\n", p.outer_run_cap());
    fmt::print(os, "sign_convention: {}\n", sign_name(p.bas.sign));
    fmt::print(os, "trace: {}\n", trace_name(c.trace));
    if (p.threads > 1) {
        fmt::print(os, "mode: parallel ({} threads; entry order not part of the reproducibility contract)\n",
                   p.threads);
    } else {
        fmt::print(os, "mode: sequential\n");
    }
    fmt::print(os, "final_ad: {}\n", report.final_ad ? format_number(*report.final_ad) : std::string("unavailable"));
    if (report.domain_fraction) {
        fmt::print(os, "front_domain_fraction: {}\n", format_number(*report.domain_fraction));
    }
    fmt::print(os, "solve_seconds: {:.3f}\n", report.solve_seconds);
    fmt::print(os, "metric_seconds: {:.3f}\n", report.metric_seconds);
    fmt::print(os, "outer_runs: {}\n", report.outer_runs);
    fmt::print(os, "archive_size: {}\n", report.archive_size);
    fmt::print(os, "accepted: {}\n", s.accepted);
    fmt::print(os, "rejected_dominated: {}\n", s.rejected_dominated);
    fmt::print(os, "rejected_duplicate: {}\n", s.rejected_duplicate);
    fmt::print(os, "infeasible: {}\n", s.infeasible);
    fmt::print(os, "removed: {}\n", s.removed);
    fmt::print(os, "evaluations: {}\n", s.evaluations);
    fmt::print(os, "rejected_steps: {}\n", s.rejected_steps);
    fmt::print(os, "truncated: {}\n", report.truncated ? "yes" : "no");
    return os.str();
}

} // namespace mobas::harness
