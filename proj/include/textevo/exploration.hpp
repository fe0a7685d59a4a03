#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "textevo/stats.hpp"

namespace textevo {

struct VersionHistory;

/// Deviation of every version from a shortest edit path between the first
/// and the last version, at character level.
struct ExplorationCurve {
    std::vector<std::size_t> d_first;  // ED(version 0, version t)
    std::vector<std::size_t> d_last;   // ED(version t, last version)
    std::size_t d_first_last = 0;
    std::vector<double> h_values;      // (d_first + d_last - d_first_last) / d_first_last
    double coefficient_e = 0.0;        // mean of h over all versions

    std::size_t n_versions() const noexcept { return h_values.size(); }
};

/// Throws Error(insufficient_data) below two versions and Error(degenerate)
/// when the first and last versions are identical.
ExplorationCurve exploration_curve(const VersionHistory& history);

/// Same measure from precomputed distances.
ExplorationCurve exploration_curve_from_distances(std::vector<std::size_t> d_first, std::vector<std::size_t> d_last);

/// Curves mapped to normalized time u = t / (n - 1), interpolated linearly on
/// `grid_points` samples, averaged over authors with a bootstrap band.
std::vector<BandPoint> mean_exploration_curve(std::span<const ExplorationCurve> curves, std::size_t grid_points = 101,
                                              std::size_t n_boot = 1000, double level = 0.995,
                                              std::uint64_t seed = 0);

/// Pearson correlation of E against version count.
Correlation exploration_vs_versions(std::span<const ExplorationCurve> curves,
                                    std::span<const std::size_t> version_counts);

}  // namespace textevo
