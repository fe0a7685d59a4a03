#include <doctest.h>

#include <set>

#include "support.hpp"
#include "textevo/cloud.hpp"
#include "textevo/complexity.hpp"
#include "textevo/corpus.hpp"
#include "textevo/editdist.hpp"
#include "textevo/error.hpp"
#include "textevo/exploration.hpp"
#include "textevo/synth.hpp"
#include "textevo/trajectory.hpp"
#include "textevo/unicode.hpp"

using namespace textevo;

namespace {

WriterProfile profile(WriterKind kind, std::uint64_t seed, std::size_t n = 20) {
    WriterProfile p;
    p.kind = kind;
    p.n_versions = n;
    p.seed = seed;
    return p;
}

std::vector<std::string> texts(const VersionHistory& h) {
    std::vector<std::string> out;
    for (const auto& v : h.versions) out.push_back(v.text);
    return out;
}

}  // namespace

TEST_CASE("every kind is deterministic and yields distinct versions") {
    for (auto kind : kAllWriterKinds) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            CAPTURE(to_string(kind));
            const auto a = simulate(profile(kind, seed));
            const auto b = simulate(profile(kind, seed));
            CHECK(texts(a.history) == texts(b.history));
            REQUIRE(a.history.size() == 20);
            const auto all = texts(a.history);
            std::set<std::string> distinct(all.begin(), all.end());
            CHECK(distinct.size() == 20);
            CHECK(texts(dedup_consecutive(a.history)) == texts(a.history));
            CHECK(a.truth.length.size() == 20);
            CHECK(a.truth.events.size() >= 19);
            for (std::size_t v = 0; v < 20; ++v) CHECK(a.truth.length[v] == to_codepoints(a.history.text(v)).size());
        }
    }
}

TEST_CASE("kind-specific guarantees") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto app = simulate(profile(WriterKind::append_only, seed)).history;
        for (std::size_t v = 1; v < app.size(); ++v) {
            CHECK(app.text(v).size() > app.text(v - 1).size());
            CHECK(app.text(v).compare(0, app.text(v - 1).size(), app.text(v - 1)) == 0);
        }

        const auto focal = simulate(profile(WriterKind::focal_reviser, seed));
        std::set<std::size_t> targets;
        for (const auto& e : focal.truth.events) targets.insert(*e.sentence);
        CHECK(targets.size() == 1);
        CHECK(shannon_wiener(build_cloud(focal.history).edit_counts) == 0.0);

        const auto flip = simulate(profile(WriterKind::char_flipper, seed)).history;
        for (std::size_t v = 1; v < flip.size(); ++v)
            CHECK(edit_distance(segment(flip.text(v - 1), Granularity::character),
                                segment(flip.text(v), Granularity::character)) == 1);

        const auto words = simulate(profile(WriterKind::word_rewriter, seed)).history;
        for (std::size_t v = 1; v < words.size(); ++v) {
            const auto m = edit_mask(edit_script(segment(words.text(v - 1), Granularity::word),
                                                 segment(words.text(v), Granularity::word)),
                                     Granularity::word);
            CHECK(m.ones() >= 1);
            CHECK(m.ones() <= 3);
        }

        const auto ex = simulate(profile(WriterKind::explorer, seed));
        CHECK(ex.truth.churn_chars.back() == 0);
        CHECK(*std::max_element(ex.truth.churn_chars.begin(), ex.truth.churn_chars.end()) > 0);
        CHECK(planted_exploration_bound(ex.truth) > 0.0);
    }
}

TEST_CASE("append-only analyses as a straight path") {
    for (std::size_t n : {5, 17, 50}) {
        const auto h = simulate(profile(WriterKind::append_only, n, n)).history;
        CHECK(exploration_curve(h).coefficient_e == 0.0);
        for (double b : angles(distance_matrix(h)).betas) CHECK(b == 180.0);
    }
}

TEST_CASE("truth log agrees with the alignment") {
    std::size_t agree = 0, total = 0;
    for (auto kind : {WriterKind::focal_reviser, WriterKind::uniform_reviser}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto sim = simulate(profile(kind, seed));
            for (const auto& e : sim.truth.events) {
                const auto s = edit_script(segment(sim.history.text(e.version - 1), Granularity::sentence),
                                           segment(sim.history.text(e.version), Granularity::sentence));
                bool hit = false;
                for (const auto& op : s.ops)
                    if (op.kind == EditKind::substitute && op.a_index == e.sentence) hit = true;
                agree += hit;
                ++total;
            }
        }
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto sim = simulate(profile(WriterKind::char_flipper, seed));
        for (const auto& e : sim.truth.events) {
            const auto s = edit_script(segment(sim.history.text(e.version - 1), Granularity::character),
                                       segment(sim.history.text(e.version), Granularity::character));
            bool hit = false;
            for (const auto& op : s.ops)
                if (op.kind == EditKind::substitute && op.a_index == e.position) hit = true;
            agree += hit;
            ++total;
        }
    }
    CHECK(agree * 100 >= total * 99);
}

TEST_CASE("infeasible profiles") {
    auto p = profile(WriterKind::focal_reviser, 0);
    p.focal_target = 10;
    CHECK_THROWS_AS(simulate(p), Error);
    p = profile(WriterKind::explorer, 0, 3);
    CHECK_THROWS_AS(simulate(p), Error);
    p = profile(WriterKind::append_only, 0, 1);
    CHECK_THROWS_AS(simulate(p), Error);
    p = profile(WriterKind::append_only, 0);
    p.text_scale = 0;
    CHECK_THROWS_AS(simulate(p), Error);
    CHECK_THROWS(parse_writer_kind("poet"));
    CHECK(parse_writer_kind("explorer") == WriterKind::explorer);
}

TEST_CASE("snapshot directory round trip") {
    testing::TempDir tmp;
    const auto p = profile(WriterKind::explorer, 8, 12);
    const auto sim = simulate(p, "ex");
    write_snapshot_directory(sim, p, tmp / "ex");
    const auto back = load_history(tmp / "ex");
    CHECK(texts(back) == texts(sim.history));
    CHECK(std::filesystem::exists(tmp / "ex/000.txt"));
    CHECK(testing::read_file(tmp / "ex/truth.json") == truth_json(sim.truth, p));
}

TEST_CASE("wordlist") {
    const auto words = wordlist();
    CHECK(words.size() == 256);
    CHECK(std::set<std::string_view>(words.begin(), words.end()).size() == words.size());
}
