#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace textevo {

struct VersionHistory;
struct WritingCloud;

struct ComplexityReport {
    double sw_index = 0.0;
    double raw_entropy = 0.0;  // nats
    std::size_t n_columns = 0;
    std::size_t total_edits = 0;
    std::vector<double> null_distribution;
    double null_percentile = 0.0;  // fraction of null samples strictly below sw_index
    std::uint64_t seed = 0;
};

/// Entropy of the edit shares over all columns, divided by ln(n_columns).
/// Zero-count columns widen the normalization only. Throws Error(no_edits)
/// for all-zero counts and Error(invalid_argument) for an empty vector.
double shannon_wiener(std::span<const std::size_t> counts);

/// Raw entropy in nats of the count shares.
double count_entropy(std::span<const std::size_t> counts);

/// Shannon-Wiener values with the cloud's edits redistributed uniformly over
/// its columns, one per permutation.
std::vector<double> null_complexity(const WritingCloud& cloud, std::size_t n_perm, std::uint64_t seed);
std::vector<double> null_complexity(const VersionHistory& history, std::size_t n_perm, std::uint64_t seed);

ComplexityReport complexity_report(const WritingCloud& cloud, std::size_t n_perm = 1000, std::uint64_t seed = 0);

}  // namespace textevo
