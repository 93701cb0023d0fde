#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mobas/benchmarks.hpp"
#include "mobas/types.hpp"

namespace mobas::pareto {

// Componentwise tolerance under which two objective vectors are the same point.
inline constexpr double duplicate_tolerance = 1e-12;

// Minimization dominance: no worse everywhere, strictly better somewhere.
// Throws std::invalid_argument on length mismatch.
[[nodiscard]] auto dominates(std::span<double const> a, std::span<double const> b) -> bool;

struct ArchiveEntry {
    Vector x;
    Vector objectives;
};

enum class InsertOutcome { accepted, rejected_dominated, rejected_duplicate };

struct InsertResult {
    InsertOutcome outcome;
    std::size_t removed = 0;
};

class ParetoArchive {
public:
    explicit ParetoArchive(std::size_t target_size);

    // Accepts the candidate unless an entry dominates or duplicates it; an
    // accepted candidate evicts every entry it dominates.
    auto insert(ArchiveEntry candidate) -> InsertResult;

    [[nodiscard]] auto entries() const noexcept -> std::vector<ArchiveEntry> const& { return entries_; }
    [[nodiscard]] auto count() const noexcept -> std::size_t { return count_; }
    [[nodiscard]] auto target_size() const noexcept -> std::size_t { return target_size_; }
    [[nodiscard]] auto full() const noexcept -> bool { return count_ >= target_size_; }

private:
    std::size_t target_size_;
    std::size_t count_ = 0;
    std::vector<ArchiveEntry> entries_;
};

using Point2 = std::pair<double, double>;

// (1/M) * sqrt(sum (psi(f1_m) - f2_m)^2). psi is applied to every f1 even
// outside the front's nominal domain. Throws std::invalid_argument when
// `points` is empty.
[[nodiscard]] auto ad_error(std::span<Point2 const> points, FrontModel const& front) -> double;
[[nodiscard]] auto ad_error(ParetoArchive const& archive, FrontModel const& front) -> double;

// Fraction of points whose f1 lies inside the front domain.
[[nodiscard]] auto domain_fraction(std::span<Point2 const> points, FrontModel const& front) -> double;

[[nodiscard]] auto objective_points(ParetoArchive const& archive) -> std::vector<Point2>;

} // namespace mobas::pareto
