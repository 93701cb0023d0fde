#include "mobas/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mobas::pareto {

namespace {

auto near_duplicate(std::span<double const> a, std::span<double const> b) -> bool
{
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (std::abs(a[k] - b[k]) > duplicate_tolerance) { return false; }
    }
    return true;
}

} // namespace

auto dominates(std::span<double const> a, std::span<double const> b) -> bool
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("dominates: objective vectors differ in length");
    }
    bool strictly_better = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] > b[k]) { return false; }
        strictly_better = strictly_better || a[k] < b[k];
    }
    return strictly_better;
}

ParetoArchive::ParetoArchive(std::size_t target_size) : target_size_(target_size)
{
    if (target_size_ == 0) {
        throw std::invalid_argument("ParetoArchive: target size must be positive");
    }
    entries_.reserve(target_size_);
}

auto ParetoArchive::insert(ArchiveEntry candidate) -> InsertResult
{
    if (!std::all_of(candidate.objectives.begin(), candidate.objectives.end(),
                     [](double v) { return std::isfinite(v); })) {
        throw std::invalid_argument("ParetoArchive::insert: candidate objectives must be finite");
    }
    for (auto const& e : entries_) {
        if (dominates(e.objectives, candidate.objectives)) {
            return { InsertOutcome::rejected_dominated, 0 };
        }
    }
    for (auto const& e : entries_) {
        if (near_duplicate(e.objectives, candidate.objectives)) {
            return { InsertOutcome::rejected_duplicate, 0 };
        }
    }

    entries_.push_back(std::move(candidate));
    ++count_;

    auto const& added = entries_.back().objectives;
    std::size_t removed = 0;
    // Compaction keeps insertion order of survivors; the candidate is last.
    auto const last = entries_.size() - 1;
    std::size_t out = 0;
    for (std::size_t i = 0; i < last; ++i) {
        if (dominates(added, entries_[i].objectives)) {
            ++removed;
            --count_;
            continue;
        }
        if (out != i) { entries_[out] = std::move(entries_[i]); }
        ++out;
    }
    if (out != last) { entries_[out] = std::move(entries_[last]); }
    entries_.resize(out + 1);
    return { InsertOutcome::accepted, removed };
}

auto ad_error(std::span<Point2 const> points, FrontModel const& front) -> double
{
    if (points.empty()) {
        throw std::invalid_argument("ad_error: no points");
    }
    double sum_sq = 0.0;
    for (auto const& [f1, f2] : points) {
        auto const dev = front.psi(f1) - f2;
        sum_sq += dev * dev;
    }
    return std::sqrt(sum_sq) / static_cast<double>(points.size());
}

auto ad_error(ParetoArchive const& archive, FrontModel const& front) -> double
{
    auto const pts = objective_points(archive);
    return ad_error(pts, front);
}

auto domain_fraction(std::span<Point2 const> points, FrontModel const& front) -> double
{
    if (points.empty()) { return 0.0; }
    auto const inside = std::count_if(points.begin(), points.end(),
                                      [&](Point2 const& p) { return front.in_domain(p.first); });
    return static_cast<double>(inside) / static_cast<double>(points.size());
}

auto objective_points(ParetoArchive const& archive) -> std::vector<Point2>
{
    std::vector<Point2> pts;
    pts.reserve(archive.count());
    for (auto const& e : archive.entries()) {
        if (e.objectives.size() < 2) {
            throw std::invalid_argument("objective_points: entries need at least two objectives");
        }
        pts.emplace_back(e.objectives[0], e.objectives[1]);
    }
    return pts;
}

} // namespace mobas::pareto
