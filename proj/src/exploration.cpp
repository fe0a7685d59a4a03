#include "textevo/exploration.hpp"

#include "textevo/corpus.hpp"
#include "textevo/editdist.hpp"
#include "textevo/error.hpp"
#include "textevo/kernels.hpp"

namespace textevo {

ExplorationCurve exploration_curve_from_distances(std::vector<std::size_t> d_first, std::vector<std::size_t> d_last) {
    if (d_first.size() != d_last.size()) throw Error(Errc::invalid_argument, "distance vectors differ in length");
    if (d_first.size() < 2) throw Error(Errc::insufficient_data, "exploration needs at least 2 versions");
    const std::size_t n = d_first.size();
    const std::size_t d0f = d_first.back();
    if (d0f == 0 || d_last.front() != d0f) {
        if (d0f == 0) throw Error(Errc::degenerate, "first and last versions are identical (d0f = 0)");
        throw Error(Errc::invalid_argument, "inconsistent endpoint distances");
    }
    ExplorationCurve c;
    c.d_first_last = d0f;
    c.h_values.resize(n);
    double sum = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        // Integer numerator: exact, and the triangle inequality keeps it >= 0.
        const auto excess = static_cast<std::int64_t>(d_first[t] + d_last[t]) - static_cast<std::int64_t>(d0f);
        if (excess < 0) throw Error(Errc::invalid_argument, "distances violate the triangle inequality");
        c.h_values[t] = static_cast<double>(excess) / static_cast<double>(d0f);
        sum += c.h_values[t];
    }
    c.coefficient_e = sum / static_cast<double>(n);
    c.d_first = std::move(d_first);
    c.d_last = std::move(d_last);
    return c;
}

ExplorationCurve exploration_curve(const VersionHistory& history) {
    if (history.size() < 2) throw Error(Errc::insufficient_data, "exploration needs at least 2 versions");
    const auto seqs = encode_versions(history, Granularity::character);
    auto d_first = kernels::distances_from_omp(seqs.front(), seqs);
    auto d_last = kernels::distances_from_omp(seqs.back(), seqs);
    return exploration_curve_from_distances(std::move(d_first), std::move(d_last));
}

std::vector<BandPoint> mean_exploration_curve(std::span<const ExplorationCurve> curves, std::size_t grid_points,
                                              std::size_t n_boot, double level, std::uint64_t seed) {
    if (curves.size() < 2) throw Error(Errc::insufficient_data, "mean curve needs at least 2 authors");
    const auto grid = unit_grid(grid_points);
    std::vector<std::vector<double>> gridded;
    gridded.reserve(curves.size());
    for (const auto& c : curves) gridded.push_back(resample_uniform(c.h_values, grid));
    return mean_band(gridded, grid, level, n_boot, seed);
}

Correlation exploration_vs_versions(std::span<const ExplorationCurve> curves,
                                    std::span<const std::size_t> version_counts) {
    if (curves.size() != version_counts.size()) throw Error(Errc::invalid_argument, "one version count per curve");
    std::vector<double> e, tf;
    for (std::size_t k = 0; k < curves.size(); ++k) {
        e.push_back(curves[k].coefficient_e);
        tf.push_back(static_cast<double>(version_counts[k]));
    }
    return pearson(e, tf);
}

}  // namespace textevo
