#include "textevo/trajectory.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "textevo/corpus.hpp"
#include "textevo/error.hpp"
#include "textevo/kernels.hpp"
#include "textevo/rng.hpp"

namespace textevo {

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {
    if (entries_.size() != n * n) throw Error(Errc::invalid_argument, "distance matrix must be n x n");
}

bool DistanceMatrix::is_valid() const {
    for (std::size_t i = 0; i < n_; ++i) {
        if ((*this)(i, i) != 0.0) return false;
        for (std::size_t j = 0; j < n_; ++j) {
            const double d = (*this)(i, j);
            if (!std::isfinite(d) || d < 0.0 || d != (*this)(j, i)) return false;
        }
    }
    return true;
}

bool DistanceMatrix::satisfies_triangle_inequality() const {
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            for (std::size_t k = 0; k < n_; ++k) {
                if ((*this)(i, j) > (*this)(i, k) + (*this)(k, j)) return false;
            }
        }
    }
    return true;
}

DistanceMatrix DistanceMatrix::scaled(double factor) const {
    std::vector<double> e = entries_;
    for (double& v : e) v *= factor;
    return {n_, std::move(e)};
}

DistanceMatrix distance_matrix(std::span<const SymbolString> versions) {
    if (versions.size() < 3) throw Error(Errc::insufficient_data, "distance matrix needs at least 3 versions");
    return {versions.size(), kernels::distance_matrix_omp(versions)};
}

DistanceMatrix distance_matrix(const VersionHistory& history, Granularity level) {
    const auto seqs = encode_versions(history, level);
    return distance_matrix(seqs);
}

double mds_variance_check(const DistanceMatrix& dm, std::size_t k) {
    const std::size_t n = dm.size();
    if (k == 0 || n < k + 1) throw Error(Errc::insufficient_data, "MDS check needs n >= k + 1");
    Eigen::MatrixXd d2(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) d2(i, j) = dm(i, j) * dm(i, j);
    }
    const Eigen::MatrixXd centering =
        Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
    const Eigen::MatrixXd b = -0.5 * centering * d2 * centering;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b, Eigen::EigenvaluesOnly);
    Eigen::VectorXd ev = solver.eigenvalues();  // ascending
    const double top = ev(ev.size() - 1);
    if (!(top > 0.0)) throw Error(Errc::degenerate, "no positive eigenvalues (all points coincide)");
    const double floor = 1e-10 * top;
    double positive = 0.0;
    double leading = 0.0;
    std::size_t taken = 0;
    for (Eigen::Index idx = ev.size() - 1; idx >= 0; --idx) {
        const double v = ev(idx);
        if (v <= floor) break;
        positive += v;
        if (taken < k) {
            leading += v;
            ++taken;
        }
    }
    return leading / positive;
}

namespace {

// Row i of the conditional affinities, calibrated so their entropy is
// ln(perplexity). Distances are shifted by the row minimum so exp() never
// underflows to an all-zero row.
void calibrate_row(const std::vector<double>& d2, std::size_t n, std::size_t i, double log_perp, double* row) {
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        if (j != i) dmin = std::min(dmin, d2[i * n + j]);
    }
    double beta = 1.0;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 200; ++iter) {
        double sum = 0.0;
        double weighted = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) {
                row[j] = 0.0;
                continue;
            }
            const double shifted = d2[i * n + j] - dmin;
            row[j] = std::exp(-beta * shifted);
            sum += row[j];
            weighted += shifted * row[j];
        }
        const double entropy = std::log(sum) + beta * weighted / sum;
        for (std::size_t j = 0; j < n; ++j) row[j] /= sum;
        const double diff = entropy - log_perp;
        if (std::abs(diff) < 1e-10) break;
        if (diff > 0.0) {
            lo = beta;
            beta = std::isinf(hi) ? beta * 2.0 : (beta + hi) / 2.0;
        } else {
            hi = beta;
            beta = std::isinf(lo) ? beta / 2.0 : (beta + lo) / 2.0;
        }
    }
}

}  // namespace

TrajectoryEmbedding tsne_embed(const DistanceMatrix& dm, const TsneParams& params, std::uint64_t seed) {
    const std::size_t n = dm.size();
    if (n < 4) throw Error(Errc::insufficient_data, "t-SNE needs at least 4 points");
    if (params.dims == 0) throw Error(Errc::invalid_argument, "embedding needs at least one dimension");
    for (double d : dm.entries()) {
        if (!std::isfinite(d)) throw Error(Errc::invalid_argument, "non-finite distance");
    }
    const double max_perp = static_cast<double>(n - 1) / 3.0;
    const double perp = params.perplexity.value_or(std::min(30.0, max_perp));
    if (!(perp > 0.0) || perp > max_perp) throw Error(Errc::infeasible, "perplexity must lie in (0, (n - 1) / 3]");

    std::vector<double> d2(n * n);
    double dmax = 0.0;
    for (std::size_t k = 0; k < n * n; ++k) {
        d2[k] = dm.entries()[k] * dm.entries()[k];
        dmax = std::max(dmax, d2[k]);
    }
    if (dmax > 0.0) {
        for (double& v : d2) v /= dmax;
    }

    std::vector<double> cond(n * n);
    const double log_perp = std::log(perp);
    for (std::size_t i = 0; i < n; ++i) calibrate_row(d2, n, i, log_perp, cond.data() + i * n);
    std::vector<double> p(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            p[i * n + j] = std::max((cond[i * n + j] + cond[j * n + i]) / (2.0 * static_cast<double>(n)), 1e-12);
        }
    }

    const std::size_t dims = params.dims;
    std::vector<double> y(n * dims);
    Rng rng(seed);
    for (double& v : y) v = params.init_scale * standard_normal(rng);
    std::vector<double> grad(n * dims, 0.0);
    std::vector<double> update(n * dims, 0.0);
    std::vector<double> gains(n * dims, 1.0);

    for (std::size_t it = 0; it < params.iterations; ++it) {
        const double exaggeration = it < params.exaggeration_iterations ? params.early_exaggeration : 1.0;
        const double momentum = it < params.momentum_switch ? params.initial_momentum : params.final_momentum;
        kernels::tsne_gradient_omp(p, y, n, dims, exaggeration, grad);
        for (std::size_t k = 0; k < y.size(); ++k) {
            const bool same_sign = (grad[k] > 0.0) == (update[k] > 0.0);
            gains[k] = same_sign ? std::max(gains[k] * 0.8, 0.01) : gains[k] + 0.2;
            update[k] = momentum * update[k] - params.learning_rate * gains[k] * grad[k];
            y[k] += update[k];
        }
        for (std::size_t c = 0; c < dims; ++c) {
            double m = 0.0;
            for (std::size_t i = 0; i < n; ++i) m += y[i * dims + c];
            m /= static_cast<double>(n);
            for (std::size_t i = 0; i < n; ++i) y[i * dims + c] -= m;
        }
    }

    double z = 0.0;
    std::vector<double> q(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double s = 0.0;
            for (std::size_t c = 0; c < dims; ++c) {
                const double diff = y[i * dims + c] - y[j * dims + c];
                s += diff * diff;
            }
            q[i * n + j] = 1.0 / (1.0 + s);
            z += q[i * n + j];
        }
    }
    double kl = 0.0;
    for (std::size_t k = 0; k < n * n; ++k) {
        if (p[k] > 0.0) kl += p[k] * std::log(p[k] / std::max(q[k] / z, 1e-300));
    }

    TrajectoryEmbedding emb;
    emb.n = n;
    emb.dims = dims;
    emb.coords = std::move(y);
    emb.seed = seed;
    emb.kl_final = kl;
    emb.perplexity = perp;
    emb.params = params;
    emb.params.perplexity = perp;
    return emb;
}

const char* to_string(AngleMethod method) {
    return method == AngleMethod::local_metric ? "local" : "tsne";
}

const char* to_string(StepLabel label) {
    switch (label) {
    case StepLabel::flow: return "flow";
    case StepLabel::exploration: return "exploration";
    case StepLabel::degenerate: return "degenerate";
    }
    return "?";
}

AngleMethod parse_angle_method(std::string_view name) {
    if (name == "local" || name == "local_metric") return AngleMethod::local_metric;
    if (name == "tsne" || name == "embedded") return AngleMethod::embedded;
    throw Error(Errc::invalid_argument, "unknown angle method: " + std::string(name));
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double degrees_from_cosine(double cosine) {
    cosine = std::clamp(cosine, -1.0, 1.0);
    if (cosine == -1.0) return 180.0;
    return std::acos(cosine) * 180.0 / std::numbers::pi;
}

}  // namespace

AngleSeries angles(const DistanceMatrix& dm) {
    const std::size_t n = dm.size();
    if (n < 3) throw Error(Errc::insufficient_data, "angles need at least 3 versions");
    AngleSeries s;
    s.method = AngleMethod::local_metric;
    for (std::size_t b = 1; b + 1 < n; ++b) {
        const double ab = dm(b - 1, b);
        const double bc = dm(b, b + 1);
        const double ac = dm(b - 1, b + 1);
        if (ab == 0.0 || bc == 0.0) {
            s.betas.push_back(kNaN);
            continue;
        }
        s.betas.push_back(degrees_from_cosine((ab * ab + bc * bc - ac * ac) / (2.0 * ab * bc)));
    }
    return s;
}

AngleSeries angles(const TrajectoryEmbedding& embedding) {
    const std::size_t n = embedding.n;
    if (n < 3) throw Error(Errc::insufficient_data, "angles need at least 3 versions");
    AngleSeries s;
    s.method = AngleMethod::embedded;
    for (std::size_t b = 1; b + 1 < n; ++b) {
        const auto pa = embedding.row(b - 1);
        const auto pb = embedding.row(b);
        const auto pc = embedding.row(b + 1);
        double dot = 0.0, nu = 0.0, nv = 0.0;
        for (std::size_t k = 0; k < embedding.dims; ++k) {
            const double u = pa[k] - pb[k];
            const double v = pc[k] - pb[k];
            dot += u * v;
            nu += u * u;
            nv += v * v;
        }
        if (nu == 0.0 || nv == 0.0) {
            s.betas.push_back(kNaN);
            continue;
        }
        s.betas.push_back(degrees_from_cosine(dot / std::sqrt(nu * nv)));
    }
    return s;
}

AngleSeries classify_and_twist(AngleSeries series, double flow_band_deg) {
    if (!(flow_band_deg >= 0.0 && flow_band_deg <= 90.0)) {
        throw Error(Errc::invalid_argument, "flow band must lie in [0, 90] degrees");
    }
    series.band_deg = flow_band_deg;
    series.labels.clear();
    std::size_t flow = 0;
    std::size_t explore = 0;
    for (double beta : series.betas) {
        if (std::isnan(beta)) {
            series.labels.push_back(StepLabel::degenerate);
            continue;
        }
        const double delta = 180.0 - beta;
        if (delta >= flow_band_deg && delta <= 180.0 - flow_band_deg) {
            series.labels.push_back(StepLabel::exploration);
            ++explore;
        } else {
            series.labels.push_back(StepLabel::flow);
            ++flow;
        }
    }
    if (flow + explore == 0) throw Error(Errc::degenerate, "every angle is degenerate");
    series.twist_ratio = static_cast<double>(flow) / static_cast<double>(flow + explore);
    series.exploration_fraction = static_cast<double>(explore) / static_cast<double>(flow + explore);
    return series;
}

double total_edits(const DistanceMatrix& dm) {
    double total = 0.0;
    for (std::size_t i = 1; i < dm.size(); ++i) total += dm(i - 1, i);
    return total;
}

Correlation twist_vs_edits(std::span<const double> twist_ratios, std::span<const double> edits) {
    return pearson(twist_ratios, edits);
}

}  // namespace textevo
