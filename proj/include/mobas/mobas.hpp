#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mobas/bas.hpp"
#include "mobas/benchmarks.hpp"
#include "mobas/pareto.hpp"

namespace mobas {

// Non-negative weights summing to one.
class WeightVector {
public:
    // Normalizes raw non-negative weights; throws std::invalid_argument if any
    // weight is negative or the sum is below 1e-12.
    explicit WeightVector(Vector raw);

    [[nodiscard]] auto weights() const noexcept -> Vector const& { return weights_; }
    [[nodiscard]] auto size() const noexcept -> std::size_t { return weights_.size(); }
    [[nodiscard]] auto operator[](std::size_t k) const noexcept -> double { return weights_[k]; }

private:
    Vector weights_;
};

// K independent U[0, 1] draws, renormalized; degenerate draws are redrawn.
[[nodiscard]] auto random_weights(std::size_t objective_count, RandomEngine& rng) -> WeightVector;

// Sum_k w_k F_k. Non-finite objectives propagate.
[[nodiscard]] auto scalarize(std::span<double const> objectives, WeightVector const& w) -> double;

struct MobasParams {
    std::size_t target_size = 200; // M
    bas::BasParams bas;
    std::size_t max_outer_runs = 0; // 0 selects 20 * M
    std::uint64_t seed = 0;
    // Worker threads for the outer loop; 1 is the sequential reference mode.
    std::size_t threads = 1;

    [[nodiscard]] auto outer_run_cap() const noexcept -> std::size_t
    {
        return max_outer_runs == 0 ? 20 * target_size : max_outer_runs;
    }
    void validate() const;
};

// Step size default: a tenth of the widest box side.
[[nodiscard]] auto default_initial_step(Bounds const& bounds) -> double;

enum class RunOutcome { accepted, rejected_dominated, rejected_duplicate, infeasible };

struct OuterRunRecord {
    std::size_t run = 0; // 1-based
    Vector weights;
    Vector best_position;
    Vector objectives;
    double best_value = 0.0;
    RunOutcome outcome = RunOutcome::accepted;
    std::size_t removed = 0;
    std::size_t archive_size = 0; // after this run
    std::optional<double> ad;     // archive AD after this run, when a front is known
    std::vector<double> inner_trace; // best scalarized value per BAS iteration, if requested
};

struct RunStats {
    std::size_t outer_runs = 0;
    std::size_t accepted = 0;
    std::size_t rejected_dominated = 0;
    std::size_t rejected_duplicate = 0;
    std::size_t infeasible = 0;
    std::size_t removed = 0;
    std::size_t rejected_steps = 0;
    std::size_t evaluations = 0;
    bool truncated = false;
    double solve_seconds = 0.0;
    double metric_seconds = 0.0; // time spent on per-run AD tracking
    std::vector<OuterRunRecord> runs;
};

struct MobasOptions {
    // Enables the per-run AD series.
    std::optional<FrontModel> front;
    bool record_inner_trace = false;
};

struct MobasResult {
    pareto::ParetoArchive archive;
    RunStats stats;
};

// Weighted-sum outer loop: each run draws fresh weights and a fresh uniform
// start, minimizes the scalarized objective with BAS and offers the best body
// position to the archive, until the archive holds M entries or the run cap
// is hit (stats.truncated).
[[nodiscard]] auto mobas_solve(MultiObjectiveProblem const& problem, MobasParams const& params,
                               MobasOptions const& options = {}) -> MobasResult;

} // namespace mobas
