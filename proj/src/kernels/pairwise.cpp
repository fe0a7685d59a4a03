#include <omp.h>

#include "textevo/kernels.hpp"

namespace textevo::kernels {

std::vector<double> distance_matrix_serial(std::span<const SymbolString> seqs) {
    const std::size_t n = seqs.size();
    std::vector<double> dm(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto d = static_cast<double>(levenshtein_bitparallel(seqs[i], seqs[j]));
            dm[i * n + j] = d;
            dm[j * n + i] = d;
        }
    }
    return dm;
}

std::vector<double> distance_matrix_omp(std::span<const SymbolString> seqs) {
    const std::size_t n = seqs.size();
    std::vector<double> dm(n * n, 0.0);
    const auto pairs = static_cast<std::int64_t>(n * (n - (n > 0 ? 1 : 0)) / 2);
    // Flattened upper triangle so short and long rows balance across threads.
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t p = 0; p < pairs; ++p) {
        std::size_t rest = static_cast<std::size_t>(p);
        std::size_t i = 0;
        while (rest >= n - 1 - i) {
            rest -= n - 1 - i;
            ++i;
        }
        const std::size_t j = i + 1 + rest;
        const auto d = static_cast<double>(levenshtein_bitparallel(seqs[i], seqs[j]));
        dm[i * n + j] = d;
        dm[j * n + i] = d;
    }
    return dm;
}

std::vector<std::size_t> distances_from_serial(SymbolView origin, std::span<const SymbolString> seqs) {
    std::vector<std::size_t> out(seqs.size());
    for (std::size_t i = 0; i < seqs.size(); ++i) out[i] = levenshtein_bitparallel(origin, seqs[i]);
    return out;
}

std::vector<std::size_t> distances_from_omp(SymbolView origin, std::span<const SymbolString> seqs) {
    std::vector<std::size_t> out(seqs.size());
    const auto n = static_cast<std::int64_t>(seqs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) out[i] = levenshtein_bitparallel(origin, seqs[i]);
    return out;
}

}  // namespace textevo::kernels
