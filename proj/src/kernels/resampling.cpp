#include <algorithm>
#include <cmath>
#include <omp.h>

#include "textevo/kernels.hpp"
#include "textevo/rng.hpp"

namespace textevo::kernels {

double normalized_entropy(std::span<const std::size_t> counts) {
    if (counts.size() <= 1) return 0.0;
    double total = 0.0;
    for (std::size_t c : counts) total += static_cast<double>(c);
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / total;
        h -= p * std::log(p);
    }
    return h / std::log(static_cast<double>(counts.size()));
}

namespace {

struct MaskLayout {
    std::size_t total = 0;
    std::vector<std::uint8_t> starts_run;  // 1 where a mask begins
    std::size_t longest = 0;
};

MaskLayout layout_of(std::span<const std::size_t> lengths) {
    MaskLayout layout;
    for (std::size_t len : lengths) {
        layout.total += len;
        layout.longest = std::max(layout.longest, len);
    }
    layout.starts_run.assign(layout.total, 0);
    std::size_t offset = 0;
    for (std::size_t len : lengths) {
        if (len > 0) layout.starts_run[offset] = 1;
        offset += len;
    }
    return layout;
}

// Places `ones` events uniformly (Floyd's subset sampling) and adds the runs
// they form to `hist`. `marked` and `chosen` are scratch buffers.
void one_shuffle(const MaskLayout& layout, std::size_t ones, std::uint64_t seed, std::vector<std::uint8_t>& marked,
                 std::vector<std::size_t>& chosen, std::vector<std::uint64_t>& hist) {
    Rng rng(seed);
    chosen.clear();
    for (std::size_t j = layout.total - ones; j < layout.total; ++j) {
        const auto t = static_cast<std::size_t>(uniform_below(rng, j + 1));
        const std::size_t pick = marked[t] ? j : t;
        marked[pick] = 1;
        chosen.push_back(pick);
    }
    std::sort(chosen.begin(), chosen.end());
    std::size_t run = 0;
    for (std::size_t k = 0; k < chosen.size(); ++k) {
        const std::size_t pos = chosen[k];
        marked[pos] = 0;
        if (run > 0 && pos == chosen[k - 1] + 1 && !layout.starts_run[pos]) {
            ++run;
        } else {
            if (run > 0) ++hist[run];
            run = 1;
        }
    }
    if (run > 0) ++hist[run];
}

}  // namespace

std::vector<std::uint64_t> shuffled_runs_serial(std::span<const std::size_t> mask_lengths, std::size_t ones,
                                                std::size_t n_shuffles, std::uint64_t seed) {
    const MaskLayout layout = layout_of(mask_lengths);
    std::vector<std::uint64_t> hist(layout.longest + 1, 0);
    if (ones == 0 || ones > layout.total) return hist;
    std::vector<std::uint8_t> marked(layout.total, 0);
    std::vector<std::size_t> chosen;
    chosen.reserve(ones);
    for (std::size_t s = 0; s < n_shuffles; ++s) one_shuffle(layout, ones, derive_seed(seed, s), marked, chosen, hist);
    return hist;
}

std::vector<std::uint64_t> shuffled_runs_omp(std::span<const std::size_t> mask_lengths, std::size_t ones,
                                             std::size_t n_shuffles, std::uint64_t seed) {
    const MaskLayout layout = layout_of(mask_lengths);
    std::vector<std::uint64_t> hist(layout.longest + 1, 0);
    if (ones == 0 || ones > layout.total) return hist;
    const auto shuffles = static_cast<std::int64_t>(n_shuffles);
#pragma omp parallel
    {
        std::vector<std::uint8_t> marked(layout.total, 0);
        std::vector<std::size_t> chosen;
        chosen.reserve(ones);
        std::vector<std::uint64_t> local(hist.size(), 0);
#pragma omp for schedule(static)
        for (std::int64_t s = 0; s < shuffles; ++s) {
            one_shuffle(layout, ones, derive_seed(seed, static_cast<std::uint64_t>(s)), marked, chosen, local);
        }
        // Integer sums: merge order cannot change the result.
#pragma omp critical
        for (std::size_t k = 0; k < hist.size(); ++k) hist[k] += local[k];
    }
    return hist;
}

namespace {

double multinomial_sw(std::size_t n_columns, std::size_t total, std::uint64_t seed, std::vector<std::size_t>& bins) {
    Rng rng(seed);
    bins.assign(n_columns, 0);
    for (std::size_t e = 0; e < total; ++e) ++bins[uniform_below(rng, n_columns)];
    return normalized_entropy(bins);
}

}  // namespace

std::vector<double> multinomial_sw_serial(std::size_t n_columns, std::size_t total, std::size_t n_perm,
                                          std::uint64_t seed) {
    std::vector<double> out(n_perm, 0.0);
    if (n_columns <= 1 || total == 0) return out;
    std::vector<std::size_t> bins;
    for (std::size_t p = 0; p < n_perm; ++p) out[p] = multinomial_sw(n_columns, total, derive_seed(seed, p), bins);
    return out;
}

std::vector<double> multinomial_sw_omp(std::size_t n_columns, std::size_t total, std::size_t n_perm,
                                       std::uint64_t seed) {
    std::vector<double> out(n_perm, 0.0);
    if (n_columns <= 1 || total == 0) return out;
    const auto perms = static_cast<std::int64_t>(n_perm);
#pragma omp parallel
    {
        std::vector<std::size_t> bins;
#pragma omp for schedule(static)
        for (std::int64_t p = 0; p < perms; ++p) {
            out[p] = multinomial_sw(n_columns, total, derive_seed(seed, static_cast<std::uint64_t>(p)), bins);
        }
    }
    return out;
}

namespace {

void resample_mean(std::span<const double> rows, std::size_t width, std::uint64_t seed, std::span<double> out) {
    const std::size_t n = rows.size() / width;
    Rng rng(seed);
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t pick = uniform_below(rng, n);
        const double* row = rows.data() + pick * width;
        for (std::size_t c = 0; c < width; ++c) out[c] += row[c];
    }
    for (double& v : out) v /= static_cast<double>(n);
}

}  // namespace

std::vector<double> bootstrap_means_serial(std::span<const double> rows, std::size_t width, std::size_t n_boot,
                                           std::uint64_t seed) {
    std::vector<double> out(n_boot * width, 0.0);
    if (width == 0 || rows.empty()) return out;
    for (std::size_t b = 0; b < n_boot; ++b) {
        resample_mean(rows, width, derive_seed(seed, b), std::span<double>(out).subspan(b * width, width));
    }
    return out;
}

std::vector<double> bootstrap_means_omp(std::span<const double> rows, std::size_t width, std::size_t n_boot,
                                        std::uint64_t seed) {
    std::vector<double> out(n_boot * width, 0.0);
    if (width == 0 || rows.empty()) return out;
    const auto boots = static_cast<std::int64_t>(n_boot);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < boots; ++b) {
        const auto ub = static_cast<std::size_t>(b);
        resample_mean(rows, width, derive_seed(seed, ub), std::span<double>(out).subspan(ub * width, width));
    }
    return out;
}

}  // namespace textevo::kernels
