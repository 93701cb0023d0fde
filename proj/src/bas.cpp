#include "mobas/bas.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

namespace mobas::bas {

namespace {

auto sign_of(double v) noexcept -> double
{
    return static_cast<double>((0.0 < v) - (v < 0.0));
}

} // namespace

void BasParams::validate() const
{
    if (!(initial_step > 0.0) || !std::isfinite(initial_step)) {
        throw std::invalid_argument("bas: initial step must be positive and finite");
    }
    if (!(antenna_ratio > 0.0) || !std::isfinite(antenna_ratio)) {
        throw std::invalid_argument("bas: antenna ratio must be positive and finite");
    }
    if (!(attenuation > 0.0 && attenuation < 1.0)) {
        throw std::invalid_argument("bas: attenuation must lie in (0, 1)");
    }
    if (max_iterations < 1) {
        throw std::invalid_argument("bas: at least one iteration is required");
    }
    if (!(antenna_floor >= 0.0) || !std::isfinite(antenna_floor)) {
        throw std::invalid_argument("bas: antenna floor must be non-negative and finite");
    }
}

auto BasParams::antenna_length(double step) const noexcept -> double
{
    return std::max(antenna_ratio * step, antenna_floor);
}

auto random_direction(std::size_t k, RandomEngine& rng) -> Vector
{
    if (k == 0) {
        throw std::invalid_argument("random_direction: dimension must be positive");
    }
    std::normal_distribution<double> normal;
    Vector b(k);
    while (true) {
        double sq = 0.0;
        for (auto& v : b) {
            v = normal(rng);
            sq += v * v;
        }
        auto const norm = std::sqrt(sq);
        if (norm >= 1e-12) {
            for (auto& v : b) { v /= norm; }
            return b;
        }
    }
}

auto antennae_probe(std::span<double const> x, std::span<double const> b, double d, Bounds const& bounds) -> Probes
{
    if (x.size() != b.size() || x.size() != bounds.dimension()) {
        throw std::invalid_argument("antennae_probe: dimension mismatch");
    }
    Probes p { Vector(x.size()), Vector(x.size()) };
    for (std::size_t j = 0; j < x.size(); ++j) {
        p.right[j] = x[j] + d * b[j];
        p.left[j] = x[j] - d * b[j];
    }
    bounds.clamp(p.right);
    bounds.clamp(p.left);
    return p;
}

auto bas_step(std::span<double const> x, std::span<double const> b, double step, double f_left, double f_right,
              Bounds const& bounds, SignConvention sign) -> StepResult
{
    if (x.size() != b.size() || x.size() != bounds.dimension()) {
        throw std::invalid_argument("bas_step: dimension mismatch");
    }
    StepResult r { Vector(x.begin(), x.end()), false };
    if (!std::isfinite(f_left) || !std::isfinite(f_right)) {
        r.rejected = true;
        return r;
    }
    auto s = sign_of(f_right - f_left);
    if (sign == SignConvention::minus) { s = -s; }
    for (std::size_t j = 0; j < x.size(); ++j) {
        r.position[j] += step * b[j] * s;
    }
    bounds.clamp(r.position);
    return r;
}

auto update_step(double step, BasParams const& params) noexcept -> double
{
    return params.attenuation * step;
}

auto bas_minimize(Objective const& objective, Bounds const& bounds, std::span<double const> x0,
                  BasParams const& params, RandomEngine& rng) -> BasResult
{
    params.validate();
    if (!bounds.contains(x0)) {
        throw std::invalid_argument("bas_minimize: start point outside the bounds");
    }

    BasResult result;
    auto& state = result.final_state;
    state.position.assign(x0.begin(), x0.end());
    state.step = params.initial_step;
    state.best_position = state.position;
    state.best_value = objective(state.position);
    result.evaluations = 1;
    if (!std::isfinite(state.best_value)) {
        throw std::runtime_error("bas_minimize: objective is not finite at the start point (value "
                                 + std::to_string(state.best_value) + ")");
    }

    result.trace.reserve(params.max_iterations);
    for (std::size_t i = 0; i < params.max_iterations; ++i) {
        state.direction = random_direction(state.position.size(), rng);
        state.antenna_length = params.antenna_length(state.step);

        auto const probes = antennae_probe(state.position, state.direction, state.antenna_length, bounds);
        auto const f_left = objective(probes.left);
        auto const f_right = objective(probes.right);

        auto moved = bas_step(state.position, state.direction, state.step, f_left, f_right, bounds, params.sign);
        if (moved.rejected) { ++result.rejected_steps; }
        state.position = std::move(moved.position);

        auto const f_body = objective(state.position);
        result.evaluations += 3;
        if (f_body < state.best_value) {
            state.best_value = f_body;
            state.best_position = state.position;
        }
        result.trace.push_back(state.best_value);
        state.step = update_step(state.step, params);
    }

    if (result.rejected_steps > 0) {
        std::clog << "bas: " << result.rejected_steps << " of " << params.max_iterations
                  << " steps skipped on non-finite probe values\n";
    }
    result.best_position = state.best_position;
    result.best_value = state.best_value;
    return result;
}

} // namespace mobas::bas
