#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "textevo/editdist.hpp"
#include "textevo/segment.hpp"

namespace textevo {

struct VersionHistory;

struct RunDistribution {
    std::map<std::size_t, double> probabilities;  // run length -> probability
    std::size_t support_max = 0;
};

/// Pooled distribution of maximal runs of 1s. Throws Error(no_edits) when no
/// mask has a set bit.
RunDistribution run_distribution(std::span<const EditMask> masks);

/// Distribution from a run-length histogram (index = length).
RunDistribution run_distribution_from_counts(std::span<const std::uint64_t> counts);

/// -ln sum_k sqrt(p_k q_k); +infinity for disjoint supports.
double bhattacharyya(const RunDistribution& p, const RunDistribution& q);

/// Run distribution of the same events reshuffled: every shuffle places the
/// pooled 1s uniformly over all positions of all masks, then runs are counted
/// within each mask. Throws Error(no_edits) for all-zero input.
RunDistribution shuffled_null(std::span<const EditMask> masks, std::size_t n_shuffles, std::uint64_t seed);

/// Masks of every consecutive version pair at one level.
std::vector<EditMask> history_masks(const VersionHistory& history, Granularity level);

struct GranularityReport {
    std::map<Granularity, double> distances;
    std::vector<Granularity> skipped;  // levels without a single edit
    Granularity selected = Granularity::sentence;
    std::size_t n_shuffles = 0;
    std::uint64_t seed = 0;
};

/// Bhattacharyya distance between observed and shuffled run distributions per
/// level; the minimum wins and ties go to the coarser level. Throws
/// Error(insufficient_data) for fewer than two versions and Error(no_edits)
/// when every level is skipped.
GranularityReport select_granularity(const VersionHistory& history, std::span<const Granularity> levels,
                                     std::size_t n_shuffles = 1000, std::uint64_t seed = 0);

}  // namespace textevo
