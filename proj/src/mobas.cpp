#include "mobas/mobas.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace mobas {

namespace {

using Clock = std::chrono::steady_clock;

auto seconds_since(Clock::time_point t0) -> double
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Independent stream per outer run, so results do not depend on scheduling.
auto run_stream(std::uint64_t seed, std::size_t run) -> RandomEngine
{
    auto const r = static_cast<std::uint64_t>(run);
    std::seed_seq seq { static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                        static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(r >> 32U) };
    return RandomEngine(seq);
}

struct RunSample {
    Vector weights;
    bas::BasResult search;
    Vector objectives;
};

auto scalarized_run(MultiObjectiveProblem const& problem, MobasParams const& params, std::size_t run) -> RunSample
{
    auto rng = run_stream(params.seed, run);
    auto const w = random_weights(problem.objective_count, rng);

    auto const& box = problem.bounds;
    Vector x0(box.dimension());
    for (std::size_t j = 0; j < x0.size(); ++j) {
        x0[j] = std::uniform_real_distribution<double>(box.lower[j], box.upper[j])(rng);
    }

    auto const phi = [&](std::span<double const> x) { return scalarize(evaluate(problem, x), w); };
    RunSample s { w.weights(), bas::bas_minimize(phi, box, x0, params.bas, rng), {} };
    s.objectives = evaluate(problem, s.search.best_position);
    return s;
}

auto to_outcome(pareto::InsertOutcome o) -> RunOutcome
{
    switch (o) {
    case pareto::InsertOutcome::accepted: return RunOutcome::accepted;
    case pareto::InsertOutcome::rejected_dominated: return RunOutcome::rejected_dominated;
    case pareto::InsertOutcome::rejected_duplicate: return RunOutcome::rejected_duplicate;
    }
    return RunOutcome::rejected_dominated;
}

} // namespace

WeightVector::WeightVector(Vector raw) : weights_(std::move(raw))
{
    if (weights_.empty()) {
        throw std::invalid_argument("WeightVector: need at least one weight");
    }
    if (std::any_of(weights_.begin(), weights_.end(), [](double v) { return !(v >= 0.0) || !std::isfinite(v); })) {
        throw std::invalid_argument("WeightVector: weights must be finite and non-negative");
    }
    auto const sum = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    if (sum < 1e-12) {
        throw std::invalid_argument("WeightVector: weights sum to (nearly) zero");
    }
    for (auto& v : weights_) { v /= sum; }
}

auto random_weights(std::size_t objective_count, RandomEngine& rng) -> WeightVector
{
    if (objective_count == 0) {
        throw std::invalid_argument("random_weights: objective count must be positive");
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vector raw(objective_count);
    while (true) {
        for (auto& v : raw) { v = unit(rng); }
        if (std::accumulate(raw.begin(), raw.end(), 0.0) >= 1e-12) {
            return WeightVector(raw);
        }
    }
}

auto scalarize(std::span<double const> objectives, WeightVector const& w) -> double
{
    if (objectives.size() != w.size()) {
        throw std::invalid_argument("scalarize: objective and weight counts differ");
    }
    double phi = 0.0;
    for (std::size_t k = 0; k < objectives.size(); ++k) { phi += w[k] * objectives[k]; }
    return phi;
}

void MobasParams::validate() const
{
    if (target_size < 1) {
        throw std::invalid_argument("mobas: target size must be at least 1");
    }
    if (outer_run_cap() < target_size) {
        throw std::invalid_argument("mobas: max outer runs must be at least the target size");
    }
    if (threads < 1) {
        throw std::invalid_argument("mobas: thread count must be at least 1");
    }
    bas.validate();
}

auto default_initial_step(Bounds const& bounds) -> double
{
    return 0.1 * bounds.max_width();
}

auto mobas_solve(MultiObjectiveProblem const& problem, MobasParams const& params, MobasOptions const& options)
    -> MobasResult
{
    params.validate();
    if (problem.objective_count < 2) {
        throw std::invalid_argument("mobas_solve: problem needs at least two objectives");
    }
    if (!problem.evaluator) {
        throw std::invalid_argument("mobas_solve: problem has no evaluator");
    }

    MobasResult result { pareto::ParetoArchive(params.target_size), {} };
    auto& archive = result.archive;
    auto& stats = result.stats;
    auto const cap = params.outer_run_cap();
    auto const t0 = Clock::now();

    auto absorb = [&](std::size_t run, RunSample sample) {
        OuterRunRecord rec;
        rec.run = run;
        rec.weights = std::move(sample.weights);
        rec.best_position = sample.search.best_position;
        rec.objectives = sample.objectives;
        rec.best_value = sample.search.best_value;
        if (options.record_inner_trace) { rec.inner_trace = std::move(sample.search.trace); }
        stats.evaluations += sample.search.evaluations + 1;
        stats.rejected_steps += sample.search.rejected_steps;

        if (!problem.is_feasible(rec.best_position)) {
            rec.outcome = RunOutcome::infeasible;
            ++stats.infeasible;
        } else {
            auto const ins = archive.insert({ sample.search.best_position, std::move(sample.objectives) });
            rec.outcome = to_outcome(ins.outcome);
            rec.removed = ins.removed;
            stats.removed += ins.removed;
            switch (ins.outcome) {
            case pareto::InsertOutcome::accepted: ++stats.accepted; break;
            case pareto::InsertOutcome::rejected_dominated: ++stats.rejected_dominated; break;
            case pareto::InsertOutcome::rejected_duplicate: ++stats.rejected_duplicate; break;
            }
        }
        rec.archive_size = archive.count();
        if (options.front && archive.count() > 0) {
            auto const tm = Clock::now();
            rec.ad = pareto::ad_error(archive, *options.front);
            stats.metric_seconds += seconds_since(tm);
        }
        stats.runs.push_back(std::move(rec));
        ++stats.outer_runs;
    };

    std::size_t next_run = 1;
    if (params.threads <= 1) {
        while (!archive.full() && next_run <= cap) {
            absorb(next_run, scalarized_run(problem, params, next_run));
            ++next_run;
        }
    } else {
        std::vector<RunSample> batch;
        while (!archive.full() && next_run <= cap) {
            auto const n = std::min(params.threads, cap - next_run + 1);
            batch.assign(n, RunSample {});
            std::vector<std::exception_ptr> errors(n);
            {
                std::vector<std::jthread> workers;
                workers.reserve(n);
                for (std::size_t i = 0; i < n; ++i) {
                    workers.emplace_back([&, i] {
                        try {
                            batch[i] = scalarized_run(problem, params, next_run + i);
                        } catch (...) {
                            errors[i] = std::current_exception();
                        }
                    });
                }
            }
            for (auto const& e : errors) {
                if (e) { std::rethrow_exception(e); }
            }
            for (std::size_t i = 0; i < n && !archive.full(); ++i) {
                absorb(next_run + i, std::move(batch[i]));
            }
            next_run += n;
        }
    }

    stats.truncated = !archive.full();
    stats.solve_seconds = std::max(0.0, seconds_since(t0) - stats.metric_seconds);
    return result;
}

} // namespace mobas
