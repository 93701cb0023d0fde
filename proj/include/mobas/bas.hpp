#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>

#include "mobas/types.hpp"

namespace mobas::bas {

// Which way the beetle moves relative to the sign of f(x_r) - f(x_l).
// `minus` steps toward the lower-valued antenna; `printed` keeps
// x + step * b * sign(f_r - f_l) literally, which climbs under minimization.
enum class SignConvention { minus, printed };

struct BasParams {
    double initial_step = 1.0;   // delta^0
    double antenna_ratio = 5.0;  // c, antenna length over step size
    double attenuation = 0.95;   // alpha, step multiplier per iteration
    std::size_t max_iterations = 500;
    double antenna_floor = 0.01; // lower bound on the antenna length
    SignConvention sign = SignConvention::minus;

    // Throws std::invalid_argument on any parameter out of range.
    void validate() const;
    [[nodiscard]] auto antenna_length(double step) const noexcept -> double;
};

struct BeetleState {
    Vector position;
    double step = 0.0;
    double antenna_length = 0.0;
    Vector direction;
    Vector best_position;
    double best_value = 0.0;
};

using Objective = std::function<double(std::span<double const>)>;

// Uniformly distributed unit vector in R^k (normalized Gaussian draw).
[[nodiscard]] auto random_direction(std::size_t k, RandomEngine& rng) -> Vector;

struct Probes {
    Vector left;
    Vector right;
};

// x_r = clamp(x + d b), x_l = clamp(x - d b).
[[nodiscard]] auto antennae_probe(std::span<double const> x, std::span<double const> b, double d,
                                  Bounds const& bounds) -> Probes;

struct StepResult {
    Vector position;
    bool rejected = false; // a probe value was not finite; position unchanged
};

[[nodiscard]] auto bas_step(std::span<double const> x, std::span<double const> b, double step, double f_left,
                            double f_right, Bounds const& bounds, SignConvention sign = SignConvention::minus)
    -> StepResult;

[[nodiscard]] auto update_step(double step, BasParams const& params) noexcept -> double;

struct BasResult {
    Vector best_position;
    double best_value = 0.0;
    // Best value after each iteration, one entry per iteration.
    std::vector<double> trace;
    std::size_t evaluations = 0;
    std::size_t rejected_steps = 0;
    BeetleState final_state;
};

// Fixed-budget beetle antennae search: 1 + 3 * max_iterations objective
// evaluations. Only body positions compete for the best-so-far slot.
// Throws std::runtime_error if the objective is not finite at x0.
[[nodiscard]] auto bas_minimize(Objective const& objective, Bounds const& bounds, std::span<double const> x0,
                                BasParams const& params, RandomEngine& rng) -> BasResult;

} // namespace mobas::bas
