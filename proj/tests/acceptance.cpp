// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "mobas/bas.hpp"
#include "mobas/benchmarks.hpp"
#include "mobas/harness.hpp"
#include "mobas/mobas.hpp"
#include "mobas/pareto.hpp"

using namespace mobas;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
    std::string id;
    bool pass;
    std::string detail;
};

std::vector<Verdict> verdicts;

void report(std::string id, bool pass, std::string detail)
{
    fmt::print("{} {:<4} {}\n", pass ? "PASS" : "FAIL", id, detail);
    std::cout.flush();
    verdicts.push_back({ std::move(id), pass, std::move(detail) });
}

auto seconds_since(Clock::time_point t0) -> double
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Front shapes and f1 domains written out independently of the library.
auto oracle_psi(ProblemId id, double f1) -> double
{
    switch (id) {
    case ProblemId::sch: return (std::sqrt(f1) - 2.0) * (std::sqrt(f1) - 2.0);
    case ProblemId::zdt1: return 1.0 - std::sqrt(f1);
    case ProblemId::zdt2: return 1.0 - f1 * f1;
    case ProblemId::zdt3: return 1.0 - std::sqrt(f1) - f1 * std::sin(10.0 * std::numbers::pi * f1);
    default: throw std::invalid_argument("no oracle front");
    }
}

auto oracle_in_zdt3_domain(double f1) -> bool
{
    if (f1 >= 0.0 && f1 <= 0.083) { return true; }
    double const lo[] = { 0.182, 0.409, 0.618, 0.823 };
    double const hi[] = { 0.258, 0.454, 0.653, 0.852 };
    for (int i = 0; i < 4; ++i) {
        if (f1 > lo[i] && f1 <= hi[i]) { return true; }
    }
    return false;
}

struct Points {
    std::vector<double> f1, f2;
};

// Reads the first two columns of a front.csv.
auto read_points(fs::path const& path) -> Points
{
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    Points p;
    while (std::getline(in, line)) {
        auto const comma = line.find(',');
        p.f1.push_back(std::strtod(line.c_str(), nullptr));
        p.f2.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
    }
    return p;
}

auto oracle_ad(ProblemId id, Points const& p) -> double
{
    double s = 0.0;
    for (std::size_t i = 0; i < p.f1.size(); ++i) {
        auto const e = oracle_psi(id, p.f1[i]) - p.f2[i];
        s += e * e;
    }
    return std::sqrt(s) / static_cast<double>(p.f1.size());
}

struct CoutCapture {
    std::ostringstream buffer;
    std::streambuf* old;
    CoutCapture() : old(std::cout.rdbuf(buffer.rdbuf())) { }
    ~CoutCapture() { std::cout.rdbuf(old); }
    CoutCapture(CoutCapture const&) = delete;
    auto operator=(CoutCapture const&) -> CoutCapture& = delete;
};

// Runs `mobas eval` in-process and returns the printed value.
auto cli_eval(ProblemId id, fs::path const& front) -> double
{
    auto const problem = std::string(to_string(id));
    auto const file = front.string();
    char const* argv[] = { "mobas", "eval", "--problem", problem.c_str(), "--front", file.c_str() };
    CoutCapture cap;
    if (harness::cli_main(6, argv) != 0) { throw std::runtime_error("eval failed on " + file); }
    return std::stod(cap.buffer.str());
}

struct Run {
    std::string name;
    harness::ExperimentConfig config;
    harness::RunReport report;
    Points points;
};

std::vector<Run> runs;

auto execute(std::string name, harness::ExperimentConfig config, fs::path const& root) -> Run const&
{
    config.output_dir = root / name;
    fs::remove_all(config.output_dir);
    auto r = harness::run_experiment(config);
    auto pts = read_points(config.output_dir / "front.csv");
    runs.push_back({ std::move(name), config, std::move(r), std::move(pts) });
    return runs.back();
}

auto describe(Run const& r) -> std::string
{
    return fmt::format("AD={:.3e} size={} outer_runs={} truncated={} solve={:.2f}s", *r.report.final_ad,
                       r.report.archive_size, r.report.outer_runs, r.report.truncated ? "yes" : "no",
                       r.report.solve_seconds);
}

// Long-budget settings for the 30-variable ZDT problems. The library defaults
// (N = 500, step0 = 0.1, alpha = 0.95) stop far from the front in 30 dimensions.
auto zdt_config(ProblemId id, std::uint64_t seed) -> harness::ExperimentConfig
{
    harness::ExperimentConfig c;
    c.problem = id;
    c.dimension = 30;
    c.points = 200;
    c.seed = seed;
    c.antenna_ratio = 5.0;
    if (id == ProblemId::zdt2) {
        c.iterations = 5000;
        c.initial_step = 0.5;
        c.attenuation = 0.999;
    } else {
        c.iterations = 5000;
        c.initial_step = 0.3;
        c.attenuation = 0.9995;
    }
    return c;
}

auto zdt_settings(Run const& r) -> std::string
{
    return fmt::format("[N={} step0={} alpha={} c={} seed={}]", r.config.iterations, *r.config.initial_step,
                       r.config.attenuation, r.config.antenna_ratio, r.config.seed);
}

void criterion_1(fs::path const& root)
{
    harness::ExperimentConfig c; // sch, M = 200, N = 500, library defaults
    c.seed = 1;
    auto const& r = execute("sch", c, root);
    auto const ad = oracle_ad(ProblemId::sch, r.points);
    report("C1", ad <= 5e-4 && r.report.solve_seconds < 60.0 && r.report.archive_size == 200,
           fmt::format("sch defaults: {} (need AD<=5e-4, <60s)", describe(r)));
}

void criterion_zdt(std::string id, ProblemId problem, double tolerance, fs::path const& root)
{
    auto const& r = execute(std::string(to_string(problem)), zdt_config(problem, 1), root);
    auto const ad = oracle_ad(problem, r.points);
    bool pass = ad <= tolerance;
    auto detail = fmt::format("{} k=30 M=200 {}: {} (need AD<={})", to_string(problem), zdt_settings(r), describe(r),
                              tolerance);
    if (problem == ProblemId::zdt3) {
        auto const inside = std::count_if(r.points.f1.begin(), r.points.f1.end(), oracle_in_zdt3_domain);
        auto const frac = static_cast<double>(inside) / static_cast<double>(r.points.f1.size());
        pass = pass && frac >= 0.9;
        detail += fmt::format(", in-domain fraction {:.3f} (need >=0.9)", frac);
    }
    report(std::move(id), pass, detail);
}

// 200 independent random searches on zdt1, one per weight vector, each keeping
// the best of S uniform samples and feeding the same archive filter. S starts
// at the 500-iteration equivalent (1 + 3 * 500 samples) and doubles until the
// archive AD comes within twice the MOBAS AD or the round outlasts 4x the MOBAS
// solve time.
void criterion_5()
{
    auto const& m = std::find_if(runs.begin(), runs.end(), [](Run const& r) { return r.name == "zdt1"; });
    auto const mobas_seconds = m->report.solve_seconds;
    auto const mobas_ad = *m->report.final_ad;
    auto const problem = make_problem(ProblemId::zdt1, 30);
    auto const front = front_model(ProblemId::zdt1);

    std::size_t samples = 1 + 3 * 500;
    double rs_seconds = 0.0;
    double rs_ad = 0.0;
    bool comparable = false;
    std::string history;
    for (;;) {
        RandomEngine rng(m->config.seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        pareto::ParetoArchive archive(200);
        Vector x(30);
        Vector best_x(30);
        auto const t0 = Clock::now();
        for (int search = 0; search < 200; ++search) {
            auto const w = random_weights(2, rng);
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t s = 0; s < samples; ++s) {
                for (auto& xi : x) { xi = u(rng); }
                auto const phi = scalarize(evaluate(problem, x), w);
                if (phi < best) {
                    best = phi;
                    best_x = x;
                }
            }
            (void)archive.insert({ best_x, evaluate(problem, best_x) });
        }
        rs_seconds = seconds_since(t0);
        rs_ad = pareto::ad_error(archive, front);
        history += fmt::format(" S={}:AD={:.2e}/{:.1f}s", samples, rs_ad, rs_seconds);
        comparable = rs_ad <= 2.0 * mobas_ad;
        if (comparable || rs_seconds > 4.0 * mobas_seconds) { break; }
        samples *= 2;
    }
    auto const pass = comparable ? mobas_seconds <= 0.5 * rs_seconds : rs_seconds > 2.0 * mobas_seconds;
    report("C5", pass,
           fmt::format("zdt1 MOBAS AD={:.3e} in {:.2f}s; random search{} -> {}", mobas_ad, mobas_seconds, history,
                       comparable ? "comparable AD reached" : "comparable AD not reached"));
}

void criterion_6()
{
    RandomEngine rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    pareto::ParetoArchive archive(10000);
    std::vector<pareto::ArchiveEntry> seen;
    std::size_t violations = 0;
    std::size_t count_mismatches = 0;
    std::size_t max_size = 0;
    for (int i = 0; i < 10000; ++i) {
        Vector f(2);
        auto const kind = u(rng);
        if (kind < 0.1 && !seen.empty()) {
            f = seen[static_cast<std::size_t>(u(rng) * static_cast<double>(seen.size()))].objectives;
        } else if (kind < 0.8) {
            // Noisy points over 200 f1 columns: at most 200 survivors, with
            // frequent replacements as columns improve.
            f[0] = std::floor(200.0 * u(rng)) / 200.0;
            f[1] = 1.0 - std::sqrt(f[0]) + 0.05 * u(rng);
        } else {
            f = { 0.3 + u(rng), 0.3 + u(rng) };
        }
        pareto::ArchiveEntry e{ {}, f };
        seen.push_back(e);
        (void)archive.insert(e);

        auto const& es = archive.entries();
        for (std::size_t a = 0; a < es.size(); ++a) {
            for (std::size_t b = 0; b < es.size(); ++b) {
                if (a == b) { continue; }
                bool weak = true;
                bool strict = false;
                for (int k = 0; k < 2; ++k) {
                    weak = weak && es[a].objectives[k] <= es[b].objectives[k];
                    strict = strict || es[a].objectives[k] < es[b].objectives[k];
                }
                violations += weak && strict ? 1 : 0;
            }
        }
        count_mismatches += archive.count() != es.size() ? 1 : 0;
        max_size = std::max(max_size, es.size());
    }
    report("C6", violations == 0 && count_mismatches == 0,
           fmt::format("10000 inserts: {} dominating pairs, {} count mismatches, peak archive size {}", violations,
                       count_mismatches, max_size));
}

void criterion_7()
{
    std::vector<Vector> grid;
    for (double a : { 0.0, 1.0, 2.0 }) {
        for (double b : { 0.0, 1.0, 2.0 }) { grid.push_back({ a, b }); }
    }
    std::size_t agree = 0;
    std::size_t pairs = 0;
    std::size_t dominating = 0;
    for (auto const& p : grid) {
        for (auto const& q : grid) {
            // p dominates q: no component worse, at least one strictly better.
            bool const expected = (p[0] <= q[0] && p[1] <= q[1]) && (p[0] < q[0] || p[1] < q[1]);
            agree += pareto::dominates(p, q) == expected ? 1 : 0;
            dominating += expected ? 1 : 0;
            ++pairs;
        }
    }
    report("C7", agree == 81 && pairs == 81,
           fmt::format("dominates agrees on {}/{} ordered pairs ({} dominating)", agree, pairs, dominating));
}

void criterion_8()
{
    Bounds const box(Vector(6, -100.0), Vector(6, 100.0));
    bas::BasParams params;
    params.max_iterations = 500;
    params.initial_step = 1.0;
    Vector const x0{ 3.0, -2.0, 1.0, 0.5, -4.0, 2.5 };

    struct Recorded {
        bas::BasResult result;
        std::size_t calls = 0;
        std::vector<Vector> evaluated;
    };
    auto record = [&](std::uint64_t seed) {
        Recorded rec;
        RandomEngine rng(seed);
        auto objective = [&](std::span<double const> x) {
            ++rec.calls;
            rec.evaluated.emplace_back(x.begin(), x.end());
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) { s += (x[i] - 1.0) * (x[i] - 1.0) * static_cast<double>(i + 1); }
            return s;
        };
        rec.result = bas::bas_minimize(objective, box, x0, params, rng);
        return rec;
    };
    // Evaluation order is x0, then (left, right, body) per iteration, so the
    // direction of iteration t is the normalized left-minus-right difference.
    auto directions = [](Recorded const& rec) {
        std::vector<Vector> dirs;
        for (std::size_t t = 1; t + 1 < rec.evaluated.size(); t += 3) {
            auto const& l = rec.evaluated[t];
            auto const& r = rec.evaluated[t + 1];
            Vector d(l.size());
            double n = 0.0;
            for (std::size_t i = 0; i < l.size(); ++i) {
                d[i] = l[i] - r[i];
                n += d[i] * d[i];
            }
            for (auto& di : d) { di /= std::sqrt(n); }
            dirs.push_back(d);
        }
        return dirs;
    };

    auto const a = record(11);
    auto const b = record(11);
    auto const c = record(12);
    auto const budget = 1 + 3 * params.max_iterations;
    bool const counted = a.calls == budget && c.calls == budget && a.result.evaluations == budget;
    bool const identical = a.result.trace.size() == b.result.trace.size()
                           && std::memcmp(a.result.trace.data(), b.result.trace.data(),
                                          a.result.trace.size() * sizeof(double))
                                  == 0
                           && a.result.best_position == b.result.best_position;
    auto const da = directions(a);
    auto const dc = directions(c);
    std::size_t differing = 0;
    for (std::size_t t = 0; t < std::min(da.size(), dc.size()); ++t) { differing += da[t] != dc[t] ? 1 : 0; }

    // The same three properties through the outer loop.
    auto const sch = make_problem(ProblemId::sch);
    MobasParams mp;
    mp.target_size = 20;
    mp.bas.max_iterations = 100;
    mp.bas.initial_step = default_initial_step(sch.bounds);
    mp.seed = 5;
    auto const m1 = mobas_solve(sch, mp);
    auto const m2 = mobas_solve(sch, mp);
    bool same_archive = m1.archive.entries().size() == m2.archive.entries().size();
    for (std::size_t i = 0; same_archive && i < m1.archive.entries().size(); ++i) {
        same_archive = m1.archive.entries()[i].x == m2.archive.entries()[i].x
                       && m1.archive.entries()[i].objectives == m2.archive.entries()[i].objectives;
    }
    bool const mobas_budget = m1.stats.evaluations == m1.stats.outer_runs * (2 + 3 * mp.bas.max_iterations);

    report("C8", counted && identical && differing == da.size() && da.size() == params.max_iterations && same_archive
                     && mobas_budget,
           fmt::format("calls={} (expect {}), same-seed traces bit-identical={}, directions differing across seeds "
                       "{}/{}, repeated mobas archive identical={}, mobas evaluations={} over {} runs",
                       a.calls, budget, identical ? "yes" : "no", differing, da.size(), same_archive ? "yes" : "no",
                       m1.stats.evaluations, m1.stats.outer_runs));
}

void criterion_9()
{
    auto const& r = *std::find_if(runs.begin(), runs.end(), [](Run const& x) { return x.name == "sch"; });
    auto const& rr = r.report.stats.runs;
    std::size_t steps = 0;
    std::size_t non_increasing = 0;
    std::optional<double> ad_at_10;
    for (std::size_t i = 0; i < rr.size(); ++i) {
        if (!ad_at_10 && rr[i].archive_size >= 10) { ad_at_10 = *rr[i].ad; }
        if (i == 0 || rr[i - 1].archive_size < 10) { continue; }
        ++steps;
        non_increasing += *rr[i].ad <= *rr[i - 1].ad ? 1 : 0;
    }
    auto const frac = steps == 0 ? 0.0 : static_cast<double>(non_increasing) / static_cast<double>(steps);
    auto const final_ad = *r.report.final_ad;
    bool const pass = ad_at_10 && steps > 0 && frac >= 0.95 && final_ad <= 0.01 * *ad_at_10;
    report("C9", pass,
           fmt::format("sch outer trace: non-increasing in {}/{} steps ({:.3f}, need >=0.95); final AD {:.3e} vs "
                       "{:.3e} at size 10 (need <=1%)",
                       non_increasing, steps, frac, final_ad, ad_at_10.value_or(NAN)));
}

void criterion_10()
{
    double worst_eval = 0.0;
    double worst_oracle = 0.0;
    for (auto const& r : runs) {
        auto const printed = cli_eval(r.config.problem, r.config.output_dir / "front.csv");
        worst_eval = std::max(worst_eval, std::abs(printed - *r.report.final_ad));
        worst_oracle = std::max(worst_oracle, std::abs(oracle_ad(r.config.problem, r.points) - *r.report.final_ad));
    }
    double worst_sample = 0.0;
    for (auto id : { ProblemId::sch, ProblemId::zdt1, ProblemId::zdt2, ProblemId::zdt3 }) {
        auto const model = front_model(id);
        auto const samples = model.sample(1000);
        worst_sample = std::max(worst_sample, pareto::ad_error(samples, model));
        Points p;
        for (auto const& [f1, f2] : samples) {
            p.f1.push_back(f1);
            p.f2.push_back(f2);
        }
        worst_sample = std::max(worst_sample, oracle_ad(id, p));
    }
    report("C10", !runs.empty() && worst_eval <= 1e-12 && worst_sample <= 1e-12,
           fmt::format("eval vs report over {} runs: max |diff| {:.1e}; independent AD vs report {:.1e}; AD of "
                       "exact front samples max {:.1e} (need <=1e-12)",
                       runs.size(), worst_eval, worst_oracle, worst_sample));
}

// zdt1, k = 30, M = 200 with every library default (N = 500), seed 1.
void default_budget(fs::path const& root)
{
    harness::ExperimentConfig c;
    c.problem = ProblemId::zdt1;
    c.seed = 1;
    auto const& r = execute("zdt1_defaults", c, root);
    report("ZDT1-DEFAULTS", oracle_ad(ProblemId::zdt1, r.points) <= 1e-2,
           fmt::format("zdt1 k=30 M=200 N=500 defaults: {} (need AD<=1e-2)", describe(r)));
}

} // namespace

auto main(int argc, char** argv) -> int
{
    CLI::App app{ "mobas acceptance suite" };
    fs::path root = fs::temp_directory_path() / "mobas_acceptance";
    bool defaults_only = false;
    std::vector<std::string> only;
    app.add_option("--out", root, "Directory for run outputs");
    app.add_flag("--default-budget", defaults_only, "Only run zdt1 with the library defaults");
    app.add_option("--only", only, "Run just these criteria (C1..C10)");
    CLI11_PARSE(app, argc, argv);

    auto wanted = [&](std::string const& id) {
        return only.empty() || std::find(only.begin(), only.end(), id) != only.end();
    };
    try {
        fs::create_directories(root);
        if (defaults_only) {
            default_budget(root);
        } else {
            if (wanted("C1") || wanted("C9") || wanted("C10")) { criterion_1(root); }
            if (wanted("C2") || wanted("C5") || wanted("C10")) { criterion_zdt("C2", ProblemId::zdt1, 1e-2, root); }
            if (wanted("C3") || wanted("C10")) { criterion_zdt("C3", ProblemId::zdt2, 1e-2, root); }
            if (wanted("C4") || wanted("C10")) { criterion_zdt("C4", ProblemId::zdt3, 5e-2, root); }
            if (wanted("C5")) { criterion_5(); }
            if (wanted("C6")) { criterion_6(); }
            if (wanted("C7")) { criterion_7(); }
            if (wanted("C8")) { criterion_8(); }
            if (wanted("C9")) { criterion_9(); }
            if (wanted("C10")) { criterion_10(); }
        }
    } catch (std::exception const& e) {
        fmt::print("FAIL error: {}\n", e.what());
        return 1;
    }
    auto const failed = std::count_if(verdicts.begin(), verdicts.end(), [](Verdict const& v) { return !v.pass; });
    fmt::print("{} of {} checks passed\n", verdicts.size() - static_cast<std::size_t>(failed), verdicts.size());
    return failed == 0 ? 0 : 1;
}
