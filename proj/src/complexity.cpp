#include "textevo/complexity.hpp"

#include <algorithm>
#include <cmath>

#include "textevo/cloud.hpp"
#include "textevo/corpus.hpp"
#include "textevo/error.hpp"
#include "textevo/kernels.hpp"

namespace textevo {

double count_entropy(std::span<const std::size_t> counts) {
    std::size_t total = 0;
    for (auto c : counts) total += c;
    if (total == 0) return 0.0;
    double h = 0.0;
    for (auto c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log(p);
    }
    return h;
}

double shannon_wiener(std::span<const std::size_t> counts) {
    if (counts.empty()) throw Error(Errc::invalid_argument, "no columns");
    if (std::all_of(counts.begin(), counts.end(), [](std::size_t c) { return c == 0; })) {
        throw Error(Errc::no_edits, "all edit counts are zero");
    }
    if (counts.size() == 1) return 0.0;
    const double sw = count_entropy(counts) / std::log(static_cast<double>(counts.size()));
    return std::clamp(sw, 0.0, 1.0);
}

std::vector<double> null_complexity(const WritingCloud& cloud, std::size_t n_perm, std::uint64_t seed) {
    if (n_perm == 0) throw Error(Errc::invalid_argument, "n_perm must be positive");
    return kernels::multinomial_sw_omp(cloud.n_columns, cloud.total_edits(), n_perm, seed);
}

std::vector<double> null_complexity(const VersionHistory& history, std::size_t n_perm, std::uint64_t seed) {
    return null_complexity(build_cloud(history), n_perm, seed);
}

ComplexityReport complexity_report(const WritingCloud& cloud, std::size_t n_perm, std::uint64_t seed) {
    ComplexityReport r;
    r.sw_index = shannon_wiener(cloud.edit_counts);
    r.raw_entropy = count_entropy(cloud.edit_counts);
    r.n_columns = cloud.n_columns;
    r.total_edits = cloud.total_edits();
    r.null_distribution = null_complexity(cloud, n_perm, seed);
    r.seed = seed;
    const auto below = std::count_if(r.null_distribution.begin(), r.null_distribution.end(),
                                     [&](double v) { return v < r.sw_index; });
    r.null_percentile = static_cast<double>(below) / static_cast<double>(r.null_distribution.size());
    return r;
}

}  // namespace textevo
