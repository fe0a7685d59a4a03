#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "textevo/cloud.hpp"
#include "textevo/complexity.hpp"
#include "textevo/error.hpp"
#include "textevo/stats.hpp"
#include "textevo/synth.hpp"

using namespace textevo;

namespace {

using Counts = std::vector<std::size_t>;

double sw(Counts c) { return shannon_wiener(c); }

}  // namespace

TEST_CASE("Shannon-Wiener examples") {
    CHECK(sw({5, 0, 0, 0}) == 0.0);
    CHECK(sw({2, 2, 2, 2}) == doctest::Approx(1.0).epsilon(1e-12));
    const double expected = (-0.5 * std::log(0.5) - 2 * 0.25 * std::log(0.25)) / std::log(3.0);
    CHECK(sw({2, 1, 1}) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(sw({2, 1, 1}) == doctest::Approx(0.9464).epsilon(1e-4));
    CHECK(sw({9}) == 0.0);
    CHECK_THROWS_AS(sw({0, 0}), Error);
    CHECK_THROWS_AS(sw({}), Error);
    const Counts c = {3, 1};
    CHECK(count_entropy(c) == doctest::Approx(-(0.75 * std::log(0.75) + 0.25 * std::log(0.25))));
}

TEST_CASE("Shannon-Wiener properties") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 200; ++i) {
        Counts c(2 + rng() % 20);
        for (auto& v : c) v = rng() % 4;
        c[0] += 1;
        c[1] += 1;
        const double v = sw(c);
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
        std::shuffle(c.begin(), c.end(), rng);
        CHECK(sw(c) == doctest::Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("null complexity examples") {
    WritingCloud one_edit;
    one_edit.n_columns = 6;
    one_edit.edit_counts = {0, 0, 1, 0, 0, 0};
    for (double v : null_complexity(one_edit, 50, 1)) CHECK(v == 0.0);

    WritingCloud single;
    single.n_columns = 1;
    single.edit_counts = {12};
    for (double v : null_complexity(single, 50, 1)) CHECK(v == 0.0);

    WritingCloud big;
    big.n_columns = 50;
    big.edit_counts.assign(50, 100);
    const auto null = null_complexity(big, 1000, 3);
    CHECK(mean(null) > 0.95);
    CHECK(null == null_complexity(big, 1000, 3));
}

TEST_CASE("focal below the null, uniform inside it") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        WriterProfile focal;
        focal.kind = WriterKind::focal_reviser;
        focal.n_versions = 30;
        focal.seed = seed;
        const auto fr = complexity_report(build_cloud(simulate(focal).history), 500, seed);
        CHECK(fr.sw_index == 0.0);
        CHECK(fr.null_percentile == 0.0);

        WriterProfile uni;
        uni.kind = WriterKind::uniform_reviser;
        uni.n_versions = 400;
        uni.text_scale = 20;
        uni.seed = seed;
        const auto ur = complexity_report(build_cloud(simulate(uni).history), 500, seed);
        CHECK(ur.null_percentile > 0.005);
        CHECK(ur.null_percentile < 0.995);
        CHECK(ur.sw_index == doctest::Approx(ur.raw_entropy / std::log(static_cast<double>(ur.n_columns))));
    }
}
