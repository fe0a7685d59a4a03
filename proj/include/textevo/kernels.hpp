#pragma once

// Data-parallel kernels. Each *_omp routine has a *_serial twin that is the
// reference for tests and benchmarks; both return bit-identical results for
// any thread count because work items draw from per-item derived seeds and
// reductions run in a fixed order.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "textevo/editdist.hpp"

namespace textevo::kernels {

// ---- edit distance -------------------------------------------------------

/// Two-row Wagner-Fischer. Reference for everything below.
std::size_t levenshtein_reference(SymbolView a, SymbolView b);

/// Myers/Hyyrö bit-vector algorithm, 64 rows per machine word.
std::size_t levenshtein_bitparallel(SymbolView a, SymbolView b);

/// Full-matrix alignment with the documented tie-break.
EditScript alignment_reference(SymbolView a, SymbolView b);

/// Same alignment from stored bit-vector columns (2 bits per cell) with the
/// common suffix peeled off first.
EditScript alignment_bitparallel(SymbolView a, SymbolView b);

// ---- pairwise distances --------------------------------------------------

/// Row-major n x n matrix of distances between all sequences.
std::vector<double> distance_matrix_serial(std::span<const SymbolString> seqs);
std::vector<double> distance_matrix_omp(std::span<const SymbolString> seqs);

/// Distance from `origin` to every sequence.
std::vector<std::size_t> distances_from_serial(SymbolView origin, std::span<const SymbolString> seqs);
std::vector<std::size_t> distances_from_omp(SymbolView origin, std::span<const SymbolString> seqs);

// ---- shuffled run-length null --------------------------------------------

/// Run-length histogram (index = run length) pooled over `n_shuffles`
/// placements of `ones` events uniformly among all positions of masks with
/// the given lengths. Runs never cross a mask boundary.
std::vector<std::uint64_t> shuffled_runs_serial(std::span<const std::size_t> mask_lengths, std::size_t ones,
                                                std::size_t n_shuffles, std::uint64_t seed);
std::vector<std::uint64_t> shuffled_runs_omp(std::span<const std::size_t> mask_lengths, std::size_t ones,
                                             std::size_t n_shuffles, std::uint64_t seed);

// ---- multinomial complexity null -----------------------------------------

/// Normalized Shannon-Wiener index of `total` events dropped uniformly into
/// `n_columns` bins, once per permutation.
std::vector<double> multinomial_sw_serial(std::size_t n_columns, std::size_t total, std::size_t n_perm,
                                          std::uint64_t seed);
std::vector<double> multinomial_sw_omp(std::size_t n_columns, std::size_t total, std::size_t n_perm,
                                       std::uint64_t seed);

// ---- bootstrap -----------------------------------------------------------

/// Means of `n_boot` resamples (with replacement) of the rows of a
/// samples x width matrix. Output is n_boot x width, row-major. A plain
/// sample vector is the width-1 case.
std::vector<double> bootstrap_means_serial(std::span<const double> rows, std::size_t width, std::size_t n_boot,
                                           std::uint64_t seed);
std::vector<double> bootstrap_means_omp(std::span<const double> rows, std::size_t width, std::size_t n_boot,
                                        std::uint64_t seed);

// ---- t-SNE gradient ------------------------------------------------------

/// KL gradient of the Student-t embedding `y` (n x dims) against affinities
/// `p` (n x n, symmetric, summing to 1) scaled by `exaggeration`. Writes
/// `grad` and returns the normalizer Z = sum_{i!=j} (1 + |y_i - y_j|^2)^-1.
double tsne_gradient_serial(std::span<const double> p, std::span<const double> y, std::size_t n, std::size_t dims,
                            double exaggeration, std::span<double> grad);
double tsne_gradient_omp(std::span<const double> p, std::span<const double> y, std::size_t n, std::size_t dims,
                         double exaggeration, std::span<double> grad);

}  // namespace textevo::kernels

namespace textevo::kernels {

/// Entropy of the count shares over ln(counts.size()); 0 for a single column.
/// No validation: callers guarantee a positive total.
double normalized_entropy(std::span<const std::size_t> counts);

}  // namespace textevo::kernels
