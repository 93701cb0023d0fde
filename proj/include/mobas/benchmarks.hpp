#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mobas/types.hpp"

namespace mobas {

enum class ProblemId { sch, zdt1, zdt2, zdt3, custom };

[[nodiscard]] auto to_string(ProblemId id) -> std::string_view;
// Accepts the lowercase identifiers used on the command line; throws
// std::invalid_argument for anything else.
[[nodiscard]] auto parse_problem_id(std::string_view name) -> ProblemId;

// Interval of admissible f1 values. Endpoints are closed unless flagged open.
struct Interval {
    double lo;
    double hi;
    bool lo_open = false;
    bool hi_open = false;

    [[nodiscard]] auto contains(double v) const noexcept -> bool;
    [[nodiscard]] auto length() const noexcept -> double { return hi - lo; }
};

// Analytic Pareto front f2 = psi(f1) restricted to a union of disjoint,
// ascending intervals.
struct FrontModel {
    std::function<double(double)> psi;
    std::vector<Interval> f1_domain;

    [[nodiscard]] auto in_domain(double f1) const noexcept -> bool;
    // Samples evenly spaced by arc length of f1 over the interval union.
    [[nodiscard]] auto sample(std::size_t count) const -> std::vector<std::pair<double, double>>;
};

struct MultiObjectiveProblem {
    ProblemId id = ProblemId::custom;
    std::size_t objective_count = 0;
    Bounds bounds;
    std::function<Vector(std::span<double const>)> evaluator;
    // Constraint check beyond the box; unset means box membership only.
    std::function<bool(std::span<double const>)> constraints;

    [[nodiscard]] auto dimension() const noexcept -> std::size_t { return bounds.dimension(); }
    [[nodiscard]] auto is_feasible(std::span<double const> x) const -> bool;
};

inline constexpr std::size_t default_zdt_dimension = 30;

// Built-in problem. `dimension` only applies to the ZDT family (k >= 2);
// SCH is always one-dimensional.
[[nodiscard]] auto make_problem(ProblemId id, std::optional<std::size_t> dimension = std::nullopt)
    -> MultiObjectiveProblem;

// Checked evaluation: rejects dimension mismatch and out-of-bounds x with
// std::invalid_argument.
[[nodiscard]] auto evaluate(MultiObjectiveProblem const& problem, std::span<double const> x) -> Vector;

[[nodiscard]] auto front_domain(ProblemId id) -> std::vector<Interval>;
[[nodiscard]] auto front_model(ProblemId id) -> FrontModel;
// psi(f1) for a built-in problem; throws std::domain_error when f1 is outside
// the problem's front domain.
[[nodiscard]] auto true_front(ProblemId id, double f1) -> double;

} // namespace mobas
