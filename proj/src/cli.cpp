#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "mobas/harness.hpp"

namespace mobas::harness {

namespace {

auto const builtin_names = std::vector<std::string> { "sch", "zdt1", "zdt2", "zdt3" };

void print_list(std::ostream& out)
{
    ExperimentConfig const defaults;
    fmt::print(out, "problems:\n");
    for (auto id : { ProblemId::sch, ProblemId::zdt1, ProblemId::zdt2, ProblemId::zdt3 }) {
        auto const p = make_problem(id);
        std::string domain;
        for (auto const& iv : front_domain(id)) {
            domain += fmt::format("{}{}{}, {}{}", domain.empty() ? "" : " U ", iv.lo_open ? '(' : '[', iv.lo, iv.hi,
                                  iv.hi_open ? ')' : ']');
        }
        fmt::print(out, "  {:<5} dim={:<3} bounds=[{}, {}] step0={} f1 domain: {}\n", to_string(id), p.dimension(),
                   p.bounds.lower[0], p.bounds.upper[0], default_initial_step(p.bounds), domain);
    }
    fmt::print(out, "defaults:\n");
    fmt::print(out, "  --points {}\n  --iters {}\n  --ratio {}\n  --alpha {}\n  --antenna-floor {}\n", defaults.points,
               defaults.iterations, defaults.antenna_ratio, defaults.attenuation, defaults.antenna_floor);
    fmt::print(out, "  --dim {} (zdt)\n  --seed {}\n  --max-outer-runs 20 x points\n  --sign-convention minus\n",
               default_zdt_dimension, defaults.seed);
}

auto trim(std::string_view v) -> std::string_view
{
    auto const first = v.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) { return {}; }
    auto const last = v.find_last_not_of(" \t\r");
    return v.substr(first, last - first + 1);
}

// Flat `key = value` lines, '#' comments. Keys are long flag names without
// the leading dashes; boolean flags take true/false.
auto config_tokens(std::string const& path) -> std::vector<std::string>
{
    std::ifstream in(path);
    if (!in) { throw std::runtime_error("cannot read config file '" + path + "'"); }
    std::vector<std::string> tokens;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto view = std::string_view(line);
        view = trim(view.substr(0, view.find('#')));
        if (view.empty()) { continue; }
        auto const eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw std::runtime_error(fmt::format("{}:{}: expected key = value", path, line_no));
        }
        auto const key = std::string(trim(view.substr(0, eq)));
        auto const value = std::string(trim(view.substr(eq + 1)));
        if (key == "config") {
            throw std::runtime_error(fmt::format("{}:{}: nested config files are not supported", path, line_no));
        }
        if (key == "parallel") {
            if (value == "true" || value == "1") { tokens.emplace_back("--parallel"); }
            continue;
        }
        tokens.push_back("--" + key);
        tokens.push_back(value);
    }
    return tokens;
}

// Expands `solve --config FILE` so that file entries precede the command-line
// flags; the last occurrence of an option wins.
auto expand_config(int argc, char const* const* argv) -> std::vector<std::string>
{
    std::vector<std::string> args(argv, argv + argc);
    if (args.size() < 2 || args[1] != "solve") { return args; }
    std::vector<std::string> rest;
    std::vector<std::string> from_file;
    for (std::size_t i = 2; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            from_file = config_tokens(args[++i]);
        } else if (args[i].rfind("--config=", 0) == 0) {
            from_file = config_tokens(args[i].substr(9));
        } else {
            rest.push_back(args[i]);
        }
    }
    std::vector<std::string> out { args[0], args[1] };
    out.insert(out.end(), from_file.begin(), from_file.end());
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

} // namespace

auto cli_main(int argc, char const* const* argv) -> int
{
    CLI::App app { "Multi-objective beetle antennae search" , "mobas" };
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    ExperimentConfig cfg;
    std::string solve_problem;
    std::string out_dir = "run";
    std::optional<double> step0;
    std::optional<std::size_t> dim;
    bool parallel = false;
    std::size_t threads = 0;

    auto* solve = app.add_subcommand("solve", "Run MOBAS on a built-in problem and write the run files");
    solve->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::string config_path;
    solve->add_option("--config", config_path, "Flat key = value file with the same keys as the long flags");
    solve->add_option("--problem", solve_problem, "sch | zdt1 | zdt2 | zdt3")
        ->required()
        ->check(CLI::IsMember(builtin_names));
    solve->add_option("--points", cfg.points, "Archive size M")->check(CLI::PositiveNumber);
    solve->add_option("--iters", cfg.iterations, "BAS iterations N per scalarized run")->check(CLI::PositiveNumber);
    solve->add_option("--step0", step0, "Initial step size (default: 0.1 x widest box side)");
    solve->add_option("--ratio", cfg.antenna_ratio, "Antenna length to step size ratio c");
    solve->add_option("--alpha", cfg.attenuation, "Step attenuation per iteration");
    solve->add_option("--antenna-floor", cfg.antenna_floor, "Lower bound on the antenna length");
    solve->add_option("--dim", dim, "Decision dimension for zdt problems");
    solve->add_option("--seed", cfg.seed, "Master seed");
    solve->add_option("--max-outer-runs", cfg.max_outer_runs, "Cap on scalarized runs (default 20 x points)");
    solve->add_option("--out", out_dir, "Output directory");
    solve->add_flag("--parallel", parallel, "Run scalarized runs concurrently");
    solve->add_option("--threads", threads, "Worker threads with --parallel (default: hardware concurrency)");
    solve->add_option("--trace", cfg.trace, "outer | inner | both")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, TraceGranularity> { { "outer", TraceGranularity::outer },
                                                      { "inner", TraceGranularity::inner },
                                                      { "both", TraceGranularity::both } },
            CLI::ignore_case));
    solve->add_option("--sign-convention", cfg.sign, "minus | printed")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, bas::SignConvention> { { "minus", bas::SignConvention::minus },
                                                         { "printed", bas::SignConvention::printed } },
            CLI::ignore_case));

    std::string eval_problem;
    std::string front_path;
    auto* eval = app.add_subcommand("eval", "Recompute AD of a front.csv against the analytic front");
    eval->add_option("--problem", eval_problem, "sch | zdt1 | zdt2 | zdt3")
        ->required()
        ->check(CLI::IsMember(builtin_names));
    eval->add_option("--front", front_path, "Archive CSV")->required();

    std::string front_problem;
    std::size_t samples = 1000;
    std::string front_out;
    auto* front = app.add_subcommand("front", "Print samples of the analytic front as f1,f2 CSV");
    front->add_option("--problem", front_problem, "sch | zdt1 | zdt2 | zdt3")
        ->required()
        ->check(CLI::IsMember(builtin_names));
    front->add_option("--samples", samples, "Number of rows")->check(CLI::PositiveNumber);
    front->add_option("--out", front_out, "Write to this file instead of standard output");

    auto* list = app.add_subcommand("list", "List built-in problems and defaults");

    std::vector<std::string> args;
    try {
        args = expand_config(argc, argv);
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    }
    try {
        // CLI11 consumes the vector form in reverse order.
        std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
        app.parse(std::move(reversed));
    } catch (CLI::ParseError const& e) {
        return app.exit(e);
    }

    try {
        if (solve->parsed()) {
            cfg.problem = parse_problem_id(solve_problem);
            cfg.output_dir = out_dir;
            cfg.initial_step = step0;
            cfg.dimension = dim;
            if (parallel) {
                cfg.threads = threads > 0 ? threads : std::max(1U, std::thread::hardware_concurrency());
            }
            auto const report = run_experiment(cfg);
            std::cout << format_report(report);
            if (report.truncated) {
                std::cerr << "warning: run cap reached before the archive was full\n";
                return exit_truncated;
            }
            return exit_ok;
        }
        if (eval->parsed()) {
            std::cout << format_number(evaluate_front_file(front_path, parse_problem_id(eval_problem))) << '\n';
            return exit_ok;
        }
        if (front->parsed()) {
            auto const model = front_model(parse_problem_id(front_problem));
            std::ofstream file;
            if (!front_out.empty()) {
                file.open(front_out, std::ios::binary | std::ios::trunc);
                if (!file) { throw std::runtime_error("cannot open '" + front_out + "' for writing"); }
            }
            std::ostream& out = front_out.empty() ? std::cout : file;
            out << "f1,f2\n";
            for (auto const& [f1, f2] : model.sample(samples)) {
                out << format_number(f1) << ',' << format_number(f2) << '\n';
            }
            return exit_ok;
        }
        if (list->parsed()) {
            print_list(std::cout);
            return exit_ok;
        }
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_failure;
}

} // namespace mobas::harness
