#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace mobas {

using Vector = std::vector<double>;

// Axis-aligned box [lower, upper] over the decision space.
struct Bounds {
    Vector lower;
    Vector upper;

    Bounds() = default;
    Bounds(Vector lo, Vector hi);

    [[nodiscard]] auto dimension() const noexcept -> std::size_t { return lower.size(); }
    [[nodiscard]] auto contains(std::span<double const> x) const noexcept -> bool;
    [[nodiscard]] auto max_width() const noexcept -> double;

    // Componentwise projection onto the box, in place.
    void clamp(std::span<double> x) const noexcept;
};

// Every stochastic component draws from an engine of this type.
using RandomEngine = std::mt19937_64;

} // namespace mobas
