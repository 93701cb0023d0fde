#include "mobas/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace mobas {

Bounds::Bounds(Vector lo, Vector hi) : lower(std::move(lo)), upper(std::move(hi))
{
    if (lower.empty() || lower.size() != upper.size()) {
        throw std::invalid_argument("bounds: lower and upper must be non-empty and of equal length");
    }
    for (std::size_t j = 0; j < lower.size(); ++j) {
        if (!(lower[j] < upper[j])) {
            throw std::invalid_argument("bounds: lower[j] < upper[j] violated at j = " + std::to_string(j));
        }
    }
}

auto Bounds::contains(std::span<double const> x) const noexcept -> bool
{
    if (x.size() != lower.size()) { return false; }
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!(x[j] >= lower[j] && x[j] <= upper[j])) { return false; }
    }
    return true;
}

auto Bounds::max_width() const noexcept -> double
{
    double w = 0.0;
    for (std::size_t j = 0; j < lower.size(); ++j) { w = std::max(w, upper[j] - lower[j]); }
    return w;
}

void Bounds::clamp(std::span<double> x) const noexcept
{
    for (std::size_t j = 0; j < x.size() && j < lower.size(); ++j) {
        x[j] = std::clamp(x[j], lower[j], upper[j]);
    }
}

} // namespace mobas
