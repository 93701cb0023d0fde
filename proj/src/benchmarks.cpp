#include "mobas/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace mobas {

namespace {

auto zdt_g(std::span<double const> x) -> double
{
    auto const tail = std::accumulate(x.begin() + 1, x.end(), 0.0);
    return 1.0 + 9.0 / static_cast<double>(x.size() - 1) * tail;
}

auto sch_front(double f1) -> double
{
    auto const r = std::sqrt(f1) - 2.0;
    return r * r;
}
auto zdt1_front(double f1) -> double { return 1.0 - std::sqrt(f1); }
auto zdt2_front(double f1) -> double { return 1.0 - f1 * f1; }
auto zdt3_front(double f1) -> double
{
    return 1.0 - std::sqrt(f1) - f1 * std::sin(10.0 * std::numbers::pi * f1);
}

auto require_builtin(ProblemId id) -> void
{
    if (id == ProblemId::custom) {
        throw std::invalid_argument("custom problems have no analytic front");
    }
}

} // namespace

auto to_string(ProblemId id) -> std::string_view
{
    switch (id) {
    case ProblemId::sch: return "sch";
    case ProblemId::zdt1: return "zdt1";
    case ProblemId::zdt2: return "zdt2";
    case ProblemId::zdt3: return "zdt3";
    case ProblemId::custom: return "custom";
    }
    return "custom";
}

auto parse_problem_id(std::string_view name) -> ProblemId
{
    for (auto id : { ProblemId::sch, ProblemId::zdt1, ProblemId::zdt2, ProblemId::zdt3, ProblemId::custom }) {
        if (name == to_string(id)) { return id; }
    }
    throw std::invalid_argument("unknown problem id '" + std::string(name) + "'");
}

auto Interval::contains(double v) const noexcept -> bool
{
    auto const above = lo_open ? v > lo : v >= lo;
    auto const below = hi_open ? v < hi : v <= hi;
    return above && below;
}

auto FrontModel::in_domain(double f1) const noexcept -> bool
{
    for (auto const& iv : f1_domain) {
        if (iv.contains(f1)) { return true; }
    }
    return false;
}

auto FrontModel::sample(std::size_t count) const -> std::vector<std::pair<double, double>>
{
    std::vector<std::pair<double, double>> out;
    if (count == 0 || f1_domain.empty()) { return out; }
    double total = 0.0;
    for (auto const& iv : f1_domain) { total += iv.length(); }

    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        // Position along the concatenated intervals. A position on a seam is
        // assigned to the interval on its left, whose upper end is closed for
        // every built-in domain.
        auto const t = count == 1 ? 0.5 * total
                                  : total * static_cast<double>(i) / static_cast<double>(count - 1);
        double offset = 0.0;
        std::size_t j = 0;
        while (j + 1 < f1_domain.size() && t > offset + f1_domain[j].length()) {
            offset += f1_domain[j].length();
            ++j;
        }
        auto const& iv = f1_domain[j];
        auto f1 = std::min(iv.lo + (t - offset), iv.hi);
        if (!iv.contains(f1)) {
            f1 = iv.lo_open && f1 <= iv.lo ? std::nextafter(iv.lo, iv.hi) : std::nextafter(iv.hi, iv.lo);
        }
        out.emplace_back(f1, psi(f1));
    }
    return out;
}

auto MultiObjectiveProblem::is_feasible(std::span<double const> x) const -> bool
{
    if (!bounds.contains(x)) { return false; }
    return !constraints || constraints(x);
}

auto make_problem(ProblemId id, std::optional<std::size_t> dimension) -> MultiObjectiveProblem
{
    MultiObjectiveProblem p;
    p.id = id;
    p.objective_count = 2;
    switch (id) {
    case ProblemId::sch:
        if (dimension && *dimension != 1) {
            throw std::invalid_argument("sch is one-dimensional");
        }
        p.bounds = Bounds({ -1e3 }, { 1e3 });
        p.evaluator = [](std::span<double const> x) -> Vector {
            auto const v = x[0];
            return { v * v, (v - 2.0) * (v - 2.0) };
        };
        return p;
    case ProblemId::zdt1:
    case ProblemId::zdt2:
    case ProblemId::zdt3: {
        auto const k = dimension.value_or(default_zdt_dimension);
        if (k < 2) {
            throw std::invalid_argument("zdt problems need dimension >= 2");
        }
        p.bounds = Bounds(Vector(k, 0.0), Vector(k, 1.0));
        if (id == ProblemId::zdt1) {
            p.evaluator = [](std::span<double const> x) -> Vector {
                auto const g = zdt_g(x);
                return { x[0], g * (1.0 - std::sqrt(x[0] / g)) };
            };
        } else if (id == ProblemId::zdt2) {
            p.evaluator = [](std::span<double const> x) -> Vector {
                auto const g = zdt_g(x);
                auto const r = x[0] / g;
                return { x[0], g * (1.0 - r * r) };
            };
        } else {
            p.evaluator = [](std::span<double const> x) -> Vector {
                auto const g = zdt_g(x);
                auto const r = x[0] / g;
                return { x[0], g * (1.0 - std::sqrt(r) - r * std::sin(10.0 * std::numbers::pi * x[0])) };
            };
        }
        return p;
    }
    case ProblemId::custom: break;
    }
    throw std::invalid_argument("make_problem: custom problems are assembled by the caller");
}

auto evaluate(MultiObjectiveProblem const& problem, std::span<double const> x) -> Vector
{
    if (x.size() != problem.dimension()) {
        throw std::invalid_argument("evaluate: expected " + std::to_string(problem.dimension())
                                    + " variables, got " + std::to_string(x.size()));
    }
    if (!problem.bounds.contains(x)) {
        throw std::invalid_argument("evaluate: decision vector outside the box bounds");
    }
    return problem.evaluator(x);
}

auto front_domain(ProblemId id) -> std::vector<Interval>
{
    switch (id) {
    case ProblemId::sch: return { { 0.0, 4.0 } };
    case ProblemId::zdt1:
    case ProblemId::zdt2: return { { 0.0, 1.0 } };
    case ProblemId::zdt3:
        return {
            { 0.0, 0.083 },
            { 0.182, 0.258, true, false },
            { 0.409, 0.454, true, false },
            { 0.618, 0.653, true, false },
            { 0.823, 0.852, true, false },
        };
    case ProblemId::custom: break;
    }
    require_builtin(id);
    return {};
}

auto front_model(ProblemId id) -> FrontModel
{
    require_builtin(id);
    FrontModel m;
    m.f1_domain = front_domain(id);
    switch (id) {
    case ProblemId::sch: m.psi = sch_front; break;
    case ProblemId::zdt1: m.psi = zdt1_front; break;
    case ProblemId::zdt2: m.psi = zdt2_front; break;
    case ProblemId::zdt3: m.psi = zdt3_front; break;
    case ProblemId::custom: break;
    }
    return m;
}

auto true_front(ProblemId id, double f1) -> double
{
    auto const model = front_model(id);
    if (!model.in_domain(f1)) {
        throw std::domain_error("true_front: f1 = " + std::to_string(f1) + " outside the front domain of "
                                + std::string(to_string(id)));
    }
    return model.psi(f1);
}

} // namespace mobas
