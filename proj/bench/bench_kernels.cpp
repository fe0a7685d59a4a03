// Serial reference vs OpenMP kernel, same inputs. Compare *_serial with *_omp rows.

#include <benchmark/benchmark.h>

#include <random>

#include "textevo/kernels.hpp"

using namespace textevo;

namespace {

std::vector<SymbolString> versions(std::size_t n, std::size_t len) {
    std::mt19937_64 rng(1);
    SymbolString base(len, U'a');
    for (auto& c : base) c = U'a' + static_cast<char32_t>(rng() % 26);
    std::vector<SymbolString> out;
    for (std::size_t i = 0; i < n; ++i) {
        for (int k = 0; k < 8; ++k) base[rng() % base.size()] = U'a' + static_cast<char32_t>(rng() % 26);
        base.insert(base.begin() + static_cast<std::ptrdiff_t>(rng() % base.size()), U'x');
        out.push_back(base);
    }
    return out;
}

void BM_levenshtein_reference(benchmark::State& st) {
    const auto v = versions(2, static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::levenshtein_reference(v[0], v[1]));
}
void BM_levenshtein_bitparallel(benchmark::State& st) {
    const auto v = versions(2, static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::levenshtein_bitparallel(v[0], v[1]));
}
void BM_alignment_reference(benchmark::State& st) {
    const auto v = versions(2, static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::alignment_reference(v[0], v[1]));
}
void BM_alignment_bitparallel(benchmark::State& st) {
    const auto v = versions(2, static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::alignment_bitparallel(v[0], v[1]));
}

void BM_distance_matrix_serial(benchmark::State& st) {
    const auto v = versions(static_cast<std::size_t>(st.range(0)), 2000);
    for (auto _ : st) benchmark::DoNotOptimize(kernels::distance_matrix_serial(v));
}
void BM_distance_matrix_omp(benchmark::State& st) {
    const auto v = versions(static_cast<std::size_t>(st.range(0)), 2000);
    for (auto _ : st) benchmark::DoNotOptimize(kernels::distance_matrix_omp(v));
}

const std::vector<std::size_t> kMaskLengths(300, 40);

void BM_shuffled_runs_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(kernels::shuffled_runs_serial(kMaskLengths, 900, 1000, 7));
}
void BM_shuffled_runs_omp(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(kernels::shuffled_runs_omp(kMaskLengths, 900, 1000, 7));
}

void BM_multinomial_sw_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(kernels::multinomial_sw_serial(50, 5000, 1000, 7));
}
void BM_multinomial_sw_omp(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(kernels::multinomial_sw_omp(50, 5000, 1000, 7));
}

std::vector<double> bootstrap_rows() {
    std::mt19937_64 rng(2);
    std::vector<double> rows(200 * 101);
    for (auto& v : rows) v = static_cast<double>(rng() % 1000) / 1000.0;
    return rows;
}

void BM_bootstrap_means_serial(benchmark::State& st) {
    const auto rows = bootstrap_rows();
    for (auto _ : st) benchmark::DoNotOptimize(kernels::bootstrap_means_serial(rows, 101, 1000, 3));
}
void BM_bootstrap_means_omp(benchmark::State& st) {
    const auto rows = bootstrap_rows();
    for (auto _ : st) benchmark::DoNotOptimize(kernels::bootstrap_means_omp(rows, 101, 1000, 3));
}

struct TsneInput {
    std::size_t n;
    std::vector<double> p, y;
};

TsneInput tsne_input(std::size_t n) {
    std::mt19937_64 rng(4);
    TsneInput in{n, std::vector<double>(n * n, 0.0), std::vector<double>(n * 3)};
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = static_cast<double>(rng() % 100 + 1);
            in.p[i * n + j] = in.p[j * n + i] = v;
            sum += 2 * v;
        }
    for (auto& v : in.p) v /= sum;
    for (auto& v : in.y) v = static_cast<double>(rng() % 2000) / 1000.0 - 1.0;
    return in;
}

void BM_tsne_gradient_serial(benchmark::State& st) {
    const auto in = tsne_input(static_cast<std::size_t>(st.range(0)));
    std::vector<double> g(in.n * 3);
    for (auto _ : st) benchmark::DoNotOptimize(kernels::tsne_gradient_serial(in.p, in.y, in.n, 3, 1.0, g));
}
void BM_tsne_gradient_omp(benchmark::State& st) {
    const auto in = tsne_input(static_cast<std::size_t>(st.range(0)));
    std::vector<double> g(in.n * 3);
    for (auto _ : st) benchmark::DoNotOptimize(kernels::tsne_gradient_omp(in.p, in.y, in.n, 3, 1.0, g));
}

}  // namespace

BENCHMARK(BM_levenshtein_reference)->Arg(500)->Arg(4000);
BENCHMARK(BM_levenshtein_bitparallel)->Arg(500)->Arg(4000);
BENCHMARK(BM_alignment_reference)->Arg(500)->Arg(2000);
BENCHMARK(BM_alignment_bitparallel)->Arg(500)->Arg(2000);
BENCHMARK(BM_distance_matrix_serial)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_distance_matrix_omp)->Arg(24)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_shuffled_runs_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_shuffled_runs_omp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_multinomial_sw_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_multinomial_sw_omp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_bootstrap_means_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bootstrap_means_omp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_tsne_gradient_serial)->Arg(100)->Arg(400);
BENCHMARK(BM_tsne_gradient_omp)->Arg(100)->Arg(400)->UseRealTime();

BENCHMARK_MAIN();
