#include <doctest.h>

#include <omp.h>

#include <random>

#include "support.hpp"
#include "textevo/kernels.hpp"

using namespace textevo;

namespace {

const int kThreads[] = {1, 2, 4, 7};

std::vector<SymbolString> random_seqs(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<SymbolString> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(testing::random_symbols(rng, 150, 5));
    return out;
}

}  // namespace

TEST_CASE("pairwise distances: omp equals serial for any thread count") {
    const auto seqs = random_seqs(17, 1);
    const auto ref = kernels::distance_matrix_serial(seqs);
    const auto from = kernels::distances_from_serial(seqs[3], seqs);
    for (int t : kThreads) {
        omp_set_num_threads(t);
        CHECK(kernels::distance_matrix_omp(seqs) == ref);
        CHECK(kernels::distances_from_omp(seqs[3], seqs) == from);
    }
    for (std::size_t i = 0; i < seqs.size(); ++i)
        for (std::size_t j = 0; j < seqs.size(); ++j)
            CHECK(ref[i * seqs.size() + j] == static_cast<double>(kernels::levenshtein_reference(seqs[i], seqs[j])));
}

TEST_CASE("shuffled runs: omp equals serial") {
    const std::vector<std::size_t> lengths = {5, 12, 1, 30, 8};
    const auto ref = kernels::shuffled_runs_serial(lengths, 14, 333, 99);
    std::uint64_t total_ones = 0;
    for (std::size_t len = 1; len < ref.size(); ++len) total_ones += len * ref[len];
    CHECK(total_ones == 14 * 333);
    for (int t : kThreads) {
        omp_set_num_threads(t);
        CHECK(kernels::shuffled_runs_omp(lengths, 14, 333, 99) == ref);
    }
    CHECK(kernels::shuffled_runs_serial(lengths, 14, 333, 100) != ref);
}

TEST_CASE("multinomial complexity null: omp equals serial") {
    const auto ref = kernels::multinomial_sw_serial(12, 40, 257, 5);
    CHECK(ref.size() == 257);
    for (double v : ref) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    for (int t : kThreads) {
        omp_set_num_threads(t);
        CHECK(kernels::multinomial_sw_omp(12, 40, 257, 5) == ref);
    }
}

TEST_CASE("bootstrap means: omp equals serial") {
    std::vector<double> rows;
    std::mt19937_64 rng(3);
    for (int i = 0; i < 9 * 4; ++i) rows.push_back(static_cast<double>(rng() % 1000) / 7.0);
    const auto ref = kernels::bootstrap_means_serial(rows, 4, 500, 8);
    CHECK(ref.size() == 500 * 4);
    for (int t : kThreads) {
        omp_set_num_threads(t);
        CHECK(kernels::bootstrap_means_omp(rows, 4, 500, 8) == ref);
    }
}

TEST_CASE("t-SNE gradient: omp equals serial") {
    const std::size_t n = 23, dims = 3;
    std::mt19937_64 rng(4);
    std::vector<double> y(n * dims), p(n * n, 0.0);
    for (auto& v : y) v = static_cast<double>(static_cast<std::int64_t>(rng() % 2001) - 1000) / 250.0;
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = static_cast<double>(rng() % 100 + 1);
            p[i * n + j] = p[j * n + i] = v;
            sum += 2 * v;
        }
    for (auto& v : p) v /= sum;
    std::vector<double> g_ref(n * dims), g(n * dims);
    const double z_ref = kernels::tsne_gradient_serial(p, y, n, dims, 4.0, g_ref);
    for (int t : kThreads) {
        omp_set_num_threads(t);
        const double z = kernels::tsne_gradient_omp(p, y, n, dims, 4.0, g);
        CHECK(z == z_ref);
        CHECK(g == g_ref);
    }
    // gradient sums to zero over points
    for (std::size_t d = 0; d < dims; ++d) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += g_ref[i * dims + d];
        CHECK(std::abs(s) < 1e-9);
    }
}

TEST_CASE("normalized entropy") {
    const std::vector<std::size_t> uniform = {3, 3, 3};
    CHECK(kernels::normalized_entropy(uniform) == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<std::size_t> single = {7};
    CHECK(kernels::normalized_entropy(single) == 0.0);
}
