#include "textevo/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <string>

#include "textevo/error.hpp"
#include "textevo/kernels.hpp"

namespace textevo {

double mean(std::span<const double> values) {
    if (values.empty()) throw Error(Errc::insufficient_data, "mean of an empty sample");
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double empirical_quantile(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw Error(Errc::insufficient_data, "quantile of an empty sample");
    const double n = static_cast<double>(sorted.size());
    // 1e-9 absorbs products like 0.0025 * 1000 landing a hair above 2.5.
    const double rank = std::ceil(q * n - 1e-9);
    const auto idx = static_cast<std::size_t>(std::clamp(rank - 1.0, 0.0, n - 1.0));
    return sorted[idx];
}

namespace {

void check_level(double level) {
    if (!(level > 0.0 && level < 1.0)) throw Error(Errc::invalid_argument, "confidence level must lie in (0, 1)");
}

ConfidenceInterval interval_from(std::vector<double>& stats, double level, std::size_t n_boot, std::uint64_t seed) {
    std::sort(stats.begin(), stats.end());
    const double tail = (1.0 - level) / 2.0;
    return {level, empirical_quantile(stats, tail), empirical_quantile(stats, 1.0 - tail), n_boot, seed};
}

}  // namespace

ConfidenceInterval bootstrap_ci(std::span<const double> samples, double level, std::size_t n_boot,
                                std::uint64_t seed) {
    if (samples.size() < 2) throw Error(Errc::insufficient_data, "bootstrap needs at least 2 samples");
    if (n_boot == 0) throw Error(Errc::invalid_argument, "n_boot must be positive");
    check_level(level);
    std::vector<double> means = kernels::bootstrap_means_omp(samples, 1, n_boot, seed);
    return interval_from(means, level, n_boot, seed);
}

std::vector<ConfidenceInterval> bootstrap_ci_pointwise(const std::vector<std::vector<double>>& curves, double level,
                                                       std::size_t n_boot, std::uint64_t seed) {
    if (curves.size() < 2) throw Error(Errc::insufficient_data, "bootstrap needs at least 2 curves");
    if (n_boot == 0) throw Error(Errc::invalid_argument, "n_boot must be positive");
    check_level(level);
    const std::size_t width = curves.front().size();
    std::vector<double> rows;
    rows.reserve(curves.size() * width);
    for (const auto& c : curves) {
        if (c.size() != width) throw Error(Errc::invalid_argument, "curves must share one grid");
        rows.insert(rows.end(), c.begin(), c.end());
    }
    const std::vector<double> means = kernels::bootstrap_means_omp(rows, width, n_boot, seed);
    std::vector<ConfidenceInterval> out;
    out.reserve(width);
    std::vector<double> column(n_boot);
    for (std::size_t c = 0; c < width; ++c) {
        for (std::size_t b = 0; b < n_boot; ++b) column[b] = means[b * width + c];
        out.push_back(interval_from(column, level, n_boot, seed));
    }
    return out;
}

std::vector<BandPoint> mean_band(const std::vector<std::vector<double>>& curves, std::span<const double> grid,
                                 double level, std::size_t n_boot, std::uint64_t seed) {
    const auto cis = bootstrap_ci_pointwise(curves, level, n_boot, seed);
    if (grid.size() != cis.size()) throw Error(Errc::invalid_argument, "grid does not match curve width");
    std::vector<BandPoint> out(grid.size());
    std::vector<double> column(curves.size());
    for (std::size_t c = 0; c < grid.size(); ++c) {
        for (std::size_t k = 0; k < curves.size(); ++k) column[k] = curves[k][c];
        out[c] = {grid[c], mean(column), cis[c].low, cis[c].high};
    }
    return out;
}

Correlation pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error(Errc::invalid_argument, "pearson: length mismatch");
    if (x.size() < 3) throw Error(Errc::insufficient_data, "pearson: >= 3 required");
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw Error(Errc::zero_variance, "pearson: zero variance");
    const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    const double df = static_cast<double>(x.size() - 2);
    double p = 0.0;
    if (std::abs(r) < 1.0) {
        const double t = r * std::sqrt(df / (1.0 - r * r));
        const boost::math::students_t dist(df);
        p = 2.0 * boost::math::cdf(dist, -std::abs(t));
    }
    return {r, std::clamp(p, 0.0, 1.0), x.size()};
}

double shannon_entropy(std::span<const double> p) {
    if (p.empty()) throw Error(Errc::invalid_argument, "entropy of an empty vector");
    double total = 0.0;
    for (double v : p) {
        if (!(v >= 0.0)) throw Error(Errc::invalid_argument, "probabilities must be non-negative");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) throw Error(Errc::invalid_argument, "probabilities must sum to 1");
    double h = 0.0;
    for (double v : p) {
        if (v > 0.0) h -= v * std::log(v);
    }
    return h;
}

std::vector<double> unit_grid(std::size_t points) {
    if (points < 2) throw Error(Errc::invalid_argument, "grid needs at least 2 points");
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i) g[i] = static_cast<double>(i) / static_cast<double>(points - 1);
    return g;
}

std::vector<double> resample_uniform(std::span<const double> values, std::span<const double> grid) {
    if (values.empty()) throw Error(Errc::insufficient_data, "nothing to resample");
    std::vector<double> out(grid.size());
    if (values.size() == 1) {
        std::fill(out.begin(), out.end(), values.front());
        return out;
    }
    const double last = static_cast<double>(values.size() - 1);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double pos = std::clamp(grid[g], 0.0, 1.0) * last;
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        if (lo >= values.size() - 1) {
            out[g] = values.back();
            continue;
        }
        const double frac = pos - static_cast<double>(lo);
        out[g] = values[lo] + frac * (values[lo + 1] - values[lo]);
    }
    return out;
}

std::vector<double> interpolate(std::span<const double> xs, std::span<const double> ys, std::span<const double> grid) {
    if (xs.size() != ys.size() || xs.empty()) throw Error(Errc::invalid_argument, "interpolate: bad samples");
    std::vector<double> out(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double x = grid[g];
        if (x <= xs.front()) {
            out[g] = ys.front();
            continue;
        }
        if (x >= xs.back()) {
            out[g] = ys.back();
            continue;
        }
        const auto it = std::upper_bound(xs.begin(), xs.end(), x);
        const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
        const std::size_t lo = hi - 1;
        const double span = xs[hi] - xs[lo];
        const double frac = span > 0.0 ? (x - xs[lo]) / span : 0.0;
        out[g] = ys[lo] + frac * (ys[hi] - ys[lo]);
    }
    return out;
}

}  // namespace textevo
