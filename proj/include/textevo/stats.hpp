#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace textevo {

struct ConfidenceInterval {
    double level = 0.995;
    double low = 0.0;
    double high = 0.0;
    std::size_t n_boot = 0;
    std::uint64_t seed = 0;
};

struct Correlation {
    double r = 0.0;
    double p = 1.0;
    std::size_t n = 0;
};

/// One grid point of a mean curve with its pointwise bootstrap band.
struct BandPoint {
    double x = 0.0;
    double mean = 0.0;
    double low = 0.0;
    double high = 0.0;
};

double mean(std::span<const double> values);

/// Inverse empirical CDF: the smallest sample x with F(x) >= q. Always returns
/// one of the samples. `sorted` must be ascending and non-empty.
double empirical_quantile(std::span<const double> sorted, double q);

/// Percentile bootstrap of the mean. Throws Error(insufficient_data) below two
/// samples.
ConfidenceInterval bootstrap_ci(std::span<const double> samples, double level = 0.995, std::size_t n_boot = 1000,
                                std::uint64_t seed = 0);

/// Pointwise percentile bootstrap over curves sampled on a shared grid. Whole
/// curves are resampled together.
std::vector<ConfidenceInterval> bootstrap_ci_pointwise(const std::vector<std::vector<double>>& curves,
                                                       double level = 0.995, std::size_t n_boot = 1000,
                                                       std::uint64_t seed = 0);

/// Mean curve plus band; `grid` supplies the x of every point.
std::vector<BandPoint> mean_band(const std::vector<std::vector<double>>& curves, std::span<const double> grid,
                                 double level, std::size_t n_boot, std::uint64_t seed);

/// Product-moment r with a two-sided Student-t p-value (n - 2 dof).
/// Throws Error(invalid_argument) on length mismatch, Error(insufficient_data)
/// below three points and Error(zero_variance).
Correlation pearson(std::span<const double> x, std::span<const double> y);

/// Natural-log entropy, 0 ln 0 = 0. Throws Error(invalid_argument) when the
/// entries are negative or do not sum to 1 within 1e-9.
double shannon_entropy(std::span<const double> p);

/// `points` evenly spaced values on [0, 1].
std::vector<double> unit_grid(std::size_t points);

/// Piecewise-linear interpolation of samples taken at evenly spaced positions
/// on [0, 1] (first sample at 0, last at 1) onto `grid`.
std::vector<double> resample_uniform(std::span<const double> values, std::span<const double> grid);

/// Piecewise-linear interpolation of (xs, ys), xs ascending, clamped at the ends.
std::vector<double> interpolate(std::span<const double> xs, std::span<const double> ys, std::span<const double> grid);

}  // namespace textevo
