#include "textevo/granularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <omp.h>

#include "textevo/corpus.hpp"
#include "textevo/error.hpp"
#include "textevo/kernels.hpp"
#include "textevo/rng.hpp"

namespace textevo {

RunDistribution run_distribution_from_counts(std::span<const std::uint64_t> counts) {
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    if (total == 0) throw Error(Errc::no_edits, "no edits at this level");
    RunDistribution dist;
    for (std::size_t len = 1; len < counts.size(); ++len) {
        if (counts[len] == 0) continue;
        dist.probabilities[len] = static_cast<double>(counts[len]) / static_cast<double>(total);
        dist.support_max = len;
    }
    return dist;
}

RunDistribution run_distribution(std::span<const EditMask> masks) {
    std::vector<std::uint64_t> counts(1, 0);
    for (const EditMask& m : masks) {
        if (m.level != masks.front().level) throw Error(Errc::level_mismatch, "masks mix granularity levels");
        std::size_t run = 0;
        auto close = [&] {
            if (run == 0) return;
            if (counts.size() <= run) counts.resize(run + 1, 0);
            ++counts[run];
            run = 0;
        };
        for (auto bit : m.bits) {
            if (bit) {
                ++run;
            } else {
                close();
            }
        }
        close();
    }
    return run_distribution_from_counts(counts);
}

double bhattacharyya(const RunDistribution& p, const RunDistribution& q) {
    if (p.probabilities == q.probabilities) return 0.0;
    double bc = 0.0;
    for (const auto& [len, pk] : p.probabilities) {
        auto it = q.probabilities.find(len);
        if (it != q.probabilities.end()) bc += std::sqrt(pk * it->second);
    }
    if (bc <= 0.0) return std::numeric_limits<double>::infinity();
    return std::max(0.0, -std::log(std::min(bc, 1.0)));
}

RunDistribution shuffled_null(std::span<const EditMask> masks, std::size_t n_shuffles, std::uint64_t seed) {
    if (n_shuffles == 0) throw Error(Errc::invalid_argument, "n_shuffles must be at least 1");
    std::vector<std::size_t> lengths;
    lengths.reserve(masks.size());
    std::size_t ones = 0;
    for (const EditMask& m : masks) {
        lengths.push_back(m.bits.size());
        ones += m.ones();
    }
    if (ones == 0) throw Error(Errc::no_edits, "no edits at this level");
    const auto counts = kernels::shuffled_runs_omp(lengths, ones, n_shuffles, seed);
    return run_distribution_from_counts(counts);
}

std::vector<EditMask> history_masks(const VersionHistory& history, Granularity level) {
    const auto encoded = encode_versions(history, level);
    const std::size_t pairs = encoded.size() > 1 ? encoded.size() - 1 : 0;
    std::vector<EditMask> masks(pairs);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(pairs); ++k) {
        masks[k] = edit_mask(edit_script(encoded[k], encoded[k + 1]), level);
    }
    return masks;
}

GranularityReport select_granularity(const VersionHistory& history, std::span<const Granularity> levels,
                                     std::size_t n_shuffles, std::uint64_t seed) {
    if (history.size() < 2) throw Error(Errc::insufficient_data, "granularity selection needs at least 2 versions");
    std::vector<Granularity> sweep(levels.begin(), levels.end());
    std::sort(sweep.begin(), sweep.end());
    sweep.erase(std::unique(sweep.begin(), sweep.end()), sweep.end());
    if (sweep.empty()) throw Error(Errc::invalid_argument, "no granularity levels requested");

    GranularityReport report;
    report.n_shuffles = n_shuffles;
    report.seed = seed;
    bool any = false;
    double best = std::numeric_limits<double>::infinity();
    for (Granularity level : sweep) {
        const auto masks = history_masks(history, level);
        std::size_t ones = 0;
        for (const auto& m : masks) ones += m.ones();
        if (ones == 0) {
            report.skipped.push_back(level);
            continue;
        }
        const RunDistribution observed = run_distribution(masks);
        const RunDistribution null = shuffled_null(masks, n_shuffles, derive_seed(seed, "granularity", to_string(level)));
        const double d = bhattacharyya(observed, null);
        report.distances[level] = d;
        // Levels ascend from fine to coarse, so <= hands ties to the coarser one.
        if (!any || d <= best) {
            best = d;
            report.selected = level;
            any = true;
        }
    }
    if (!any) throw Error(Errc::no_edits, "no edits at any granularity level");
    return report;
}

}  // namespace textevo
