#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "textevo/editdist.hpp"
#include "textevo/segment.hpp"
#include "textevo/stats.hpp"

namespace textevo {

struct VersionHistory;

class DistanceMatrix {
public:
    DistanceMatrix() = default;
    DistanceMatrix(std::size_t n, std::vector<double> entries);

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    std::span<const double> entries() const noexcept { return entries_; }

    /// Symmetric, zero diagonal, non-negative, finite.
    bool is_valid() const;
    bool satisfies_triangle_inequality() const;

    DistanceMatrix scaled(double factor) const;

private:
    std::size_t n_ = 0;
    std::vector<double> entries_;
};

/// All pairwise edit distances. Throws Error(insufficient_data) below three
/// versions.
DistanceMatrix distance_matrix(const VersionHistory& history, Granularity level = Granularity::character);
DistanceMatrix distance_matrix(std::span<const SymbolString> versions);

/// Share of positive classical-MDS eigenvalue mass in the top k.
double mds_variance_check(const DistanceMatrix& dm, std::size_t k = 3);

struct TsneParams {
    std::size_t dims = 3;
    std::optional<double> perplexity;  // default min(30, (n - 1) / 3)
    std::size_t iterations = 1000;
    double learning_rate = 200.0;
    double early_exaggeration = 12.0;
    std::size_t exaggeration_iterations = 250;
    double initial_momentum = 0.5;
    double final_momentum = 0.8;
    std::size_t momentum_switch = 250;
    double init_scale = 1e-4;
};

struct TrajectoryEmbedding {
    std::size_t n = 0;
    std::size_t dims = 0;
    std::vector<double> coords;  // n x dims, row-major
    std::uint64_t seed = 0;
    double kl_final = 0.0;
    double perplexity = 0.0;
    TsneParams params;

    std::span<const double> row(std::size_t i) const { return {coords.data() + i * dims, dims}; }
};

/// Exact t-SNE on precomputed distances. Deterministic for a fixed seed.
/// Throws Error(insufficient_data) below four points, Error(infeasible) for a
/// perplexity outside (0, (n - 1) / 3], Error(invalid_argument) for
/// non-finite distances.
TrajectoryEmbedding tsne_embed(const DistanceMatrix& dm, const TsneParams& params = {}, std::uint64_t seed = 0);

enum class AngleMethod { local_metric, embedded };
enum class StepLabel { flow, exploration, degenerate };

const char* to_string(AngleMethod method);
const char* to_string(StepLabel label);
AngleMethod parse_angle_method(std::string_view name);

/// One entry per interior version 1..n-2.
struct AngleSeries {
    std::vector<double> betas;  // degrees; NaN where degenerate
    AngleMethod method = AngleMethod::local_metric;
    std::vector<StepLabel> labels;
    double band_deg = 30.0;
    double twist_ratio = 0.0;
    double exploration_fraction = 0.0;
};

/// Angle at each version between its predecessor and successor, by the law of
/// cosines on the metric itself. A zero-length leg is degenerate.
AngleSeries angles(const DistanceMatrix& dm);

/// Same angle measured between embedded vectors.
AngleSeries angles(const TrajectoryEmbedding& embedding);

/// Deviation 180 - beta inside [band, 180 - band] is exploration, otherwise
/// flow. twist_ratio is the flow share of non-degenerate steps. Throws
/// Error(degenerate) when no step is classifiable.
AngleSeries classify_and_twist(AngleSeries series, double flow_band_deg = 30.0);

/// Sum of consecutive-version distances.
double total_edits(const DistanceMatrix& dm);

/// Pearson correlation of twist ratio against total edits.
Correlation twist_vs_edits(std::span<const double> twist_ratios, std::span<const double> edits);

}  // namespace textevo
