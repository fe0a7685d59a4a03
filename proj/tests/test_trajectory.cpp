#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <random>

#include "textevo/corpus.hpp"
#include "textevo/editdist.hpp"
#include "textevo/error.hpp"
#include "textevo/synth.hpp"
#include "textevo/trajectory.hpp"

using namespace textevo;

namespace {

DistanceMatrix triangle(double ab, double bc, double ac) {
    return DistanceMatrix(3, {0, ab, ac, ab, 0, bc, ac, bc, 0});
}

DistanceMatrix from_points(const std::vector<std::vector<double>>& pts) {
    const std::size_t n = pts.size();
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0;
            for (std::size_t d = 0; d < pts[i].size(); ++d) s += (pts[i][d] - pts[j][d]) * (pts[i][d] - pts[j][d]);
            e[i * n + j] = std::sqrt(s);
        }
    return DistanceMatrix(n, e);
}

double embedded_distance(const TrajectoryEmbedding& e, std::size_t i, std::size_t j) {
    double s = 0;
    for (std::size_t d = 0; d < e.dims; ++d) s += (e.row(i)[d] - e.row(j)[d]) * (e.row(i)[d] - e.row(j)[d]);
    return std::sqrt(s);
}

AngleSeries series(std::vector<double> betas) {
    AngleSeries s;
    s.betas = std::move(betas);
    return s;
}

}  // namespace

TEST_CASE("distance matrix examples") {
    const auto dm = distance_matrix(make_history("x", {"a", "ab", "abc"}));
    CHECK(std::vector<double>(dm.entries().begin(), dm.entries().end()) ==
          std::vector<double>{0, 1, 2, 1, 0, 1, 2, 1, 0});
    CHECK(dm.is_valid());
    CHECK(dm.satisfies_triangle_inequality());
    CHECK_THROWS_AS(distance_matrix(make_history("x", {"a", "b"})), Error);

    WriterProfile p;
    p.kind = WriterKind::uniform_reviser;
    p.n_versions = 8;
    p.seed = 5;
    const auto h = simulate(p).history;
    const auto full = distance_matrix(h);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            CHECK(full(i, j) == static_cast<double>(edit_distance(segment(h.text(i), Granularity::character),
                                                                  segment(h.text(j), Granularity::character))));
    const auto sentences = distance_matrix(h, Granularity::sentence);
    CHECK(sentences(0, 1) == 1.0);
}

TEST_CASE("MDS variance") {
    const auto line = from_points({{0}, {1.5}, {4}, {7}, {7.25}});
    CHECK(mds_variance_check(line, 1) == doctest::Approx(1.0).epsilon(1e-12));
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<std::vector<double>> pts(20 + trial * 7, std::vector<double>(3));
        for (auto& p : pts)
            for (auto& c : p) c = u(rng);
        CHECK(std::abs(mds_variance_check(from_points(pts), 3) - 1.0) < 1e-9);
        CHECK(mds_variance_check(from_points(pts), 1) < 1.0);
    }
    CHECK_THROWS_AS(mds_variance_check(DistanceMatrix(3, std::vector<double>(9, 0.0))), Error);
}

TEST_CASE("t-SNE on an equilateral metric") {
    const DistanceMatrix dm(4, {0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0});
    TsneParams params;
    params.perplexity = 1.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto e = tsne_embed(dm, params, seed);
        double lo = 1e300, hi = 0;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j) {
                lo = std::min(lo, embedded_distance(e, i, j));
                hi = std::max(hi, embedded_distance(e, i, j));
            }
        CHECK(hi <= 1.2 * lo);
    }
}

TEST_CASE("t-SNE keeps duplicates together") {
    std::vector<std::vector<double>> pts = {{0, 0}, {0, 0}, {5, 1}, {2, 7}, {9, 9}, {4, 4}, {8, 2}};
    const auto e = tsne_embed(from_points(pts), {}, 3);
    const double dup = embedded_distance(e, 0, 1);
    for (std::size_t k = 2; k < pts.size(); ++k) {
        CHECK(dup < embedded_distance(e, 0, k));
        CHECK(dup < embedded_distance(e, 1, k));
    }
}

TEST_CASE("t-SNE is deterministic across runs and thread counts") {
    WriterProfile p;
    p.kind = WriterKind::explorer;
    p.n_versions = 30;
    p.seed = 17;
    const auto dm = distance_matrix(simulate(p).history);
    omp_set_num_threads(1);
    const auto ref = tsne_embed(dm, {}, 42);
    CHECK(ref.coords.size() == 90);
    CHECK(ref.perplexity == doctest::Approx(29.0 / 3.0));
    for (int t : {1, 2, 4}) {
        omp_set_num_threads(t);
        const auto e = tsne_embed(dm, {}, 42);
        CHECK(e.coords == ref.coords);
        CHECK(e.kl_final == ref.kl_final);
    }
    CHECK(tsne_embed(dm, {}, 43).coords != ref.coords);
}

TEST_CASE("t-SNE argument checks") {
    const auto dm = from_points({{0}, {1}, {2}, {3}, {4}, {5}, {6}});
    TsneParams bad;
    bad.perplexity = 2.5;
    CHECK_THROWS_AS(tsne_embed(dm, bad, 0), Error);
    bad.perplexity = 0.0;
    CHECK_THROWS_AS(tsne_embed(dm, bad, 0), Error);
    CHECK_THROWS_AS(tsne_embed(from_points({{0}, {1}, {2}}), {}, 0), Error);
    auto entries = std::vector<double>(dm.entries().begin(), dm.entries().end());
    entries[1] = entries[7] = INFINITY;
    CHECK_THROWS_AS(tsne_embed(DistanceMatrix(7, entries), {}, 0), Error);
}

TEST_CASE("angle examples") {
    CHECK(angles(triangle(2, 3, 5)).betas[0] == 180.0);
    CHECK(angles(triangle(1, 1, std::sqrt(2.0))).betas[0] == doctest::Approx(90.0).epsilon(1e-12));
    CHECK(angles(triangle(1, 1, 1)).betas[0] == doctest::Approx(60.0).epsilon(1e-12));
    CHECK(std::isnan(angles(triangle(0, 1, 1)).betas[0]));
}

TEST_CASE("classification examples") {
    const auto flat = classify_and_twist(series({180, 180, 180}));
    CHECK(flat.twist_ratio == 1.0);
    const auto right = classify_and_twist(series({90, 90}));
    CHECK(right.twist_ratio == 0.0);
    CHECK(right.exploration_fraction == 1.0);
    const auto mixed = classify_and_twist(series({180, 175, 100, 180}));
    CHECK(mixed.labels ==
          std::vector<StepLabel>{StepLabel::flow, StepLabel::flow, StepLabel::exploration, StepLabel::flow});
    CHECK(mixed.twist_ratio == 0.75);
    // band edges are exploration; a full reversal is flow
    const auto edges = classify_and_twist(series({150, 30, 0.5, NAN}));
    CHECK(edges.labels ==
          std::vector<StepLabel>{StepLabel::exploration, StepLabel::exploration, StepLabel::flow, StepLabel::degenerate});
    CHECK(edges.twist_ratio == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(classify_and_twist(series({NAN})), Error);
    CHECK_THROWS_AS(classify_and_twist(series({90}), 91), Error);
}

TEST_CASE("angles on synthetic histories") {
    for (std::uint64_t seed = 0; seed < 24; ++seed) {
        WriterProfile p;
        p.kind = kAllWriterKinds[seed % 6];
        p.n_versions = 10;
        p.seed = seed;
        const auto dm = distance_matrix(simulate(p).history);
        const auto a = classify_and_twist(angles(dm));
        for (double b : a.betas) {
            CHECK(b > 0.0);
            CHECK(b <= 180.0);
        }
        if (p.kind == WriterKind::append_only)
            for (double b : a.betas) CHECK(b == 180.0);
        CHECK(classify_and_twist(angles(dm.scaled(7.0))).labels == a.labels);
    }
}

TEST_CASE("twist against edits") {
    const std::vector<double> twist = {1.0, 0.9, 0.5, 0.2};
    const std::vector<double> edits = {10, 40, 200, 900};
    CHECK(twist_vs_edits(twist, edits).r < 0.0);
    const std::vector<double> flat = {1, 1, 1, 1};
    CHECK_THROWS_AS(twist_vs_edits(flat, edits), Error);
    const std::vector<double> two = {1, 0.5}, two_e = {1, 2};
    CHECK_THROWS_AS(twist_vs_edits(two, two_e), Error);
    CHECK(total_edits(triangle(2, 3, 5)) == 5.0);
}

TEST_CASE("heavy editors twist less") {
    std::vector<double> twist, edits;
    for (std::uint64_t k = 0; k < 12; ++k) {
        WriterProfile p;
        p.kind = k % 2 ? WriterKind::focal_reviser : WriterKind::append_only;
        p.n_versions = k % 2 ? 40 : 12;
        p.seed = k;
        const auto dm = distance_matrix(simulate(p).history);
        twist.push_back(classify_and_twist(angles(dm)).twist_ratio);
        edits.push_back(total_edits(dm));
    }
    CHECK(twist_vs_edits(twist, edits).r < 0.0);
}

TEST_CASE("angle method names") {
    CHECK(parse_angle_method("tsne") == AngleMethod::embedded);
    CHECK(parse_angle_method("local") == AngleMethod::local_metric);
    CHECK(std::string(to_string(AngleMethod::embedded)) == "tsne");
    CHECK_THROWS(parse_angle_method("pca"));
}
