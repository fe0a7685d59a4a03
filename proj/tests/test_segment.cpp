#include <doctest.h>

#include <random>

#include "textevo/segment.hpp"
#include "textevo/synth.hpp"
#include "textevo/unicode.hpp"

using namespace textevo;

namespace {

std::vector<std::string> tokens(std::string_view text, Granularity level) {
    std::vector<std::string> out;
    for (const auto& t : segment(text, level).tokens) out.push_back(to_utf8(t));
    return out;
}

using V = std::vector<std::string>;

}  // namespace

TEST_CASE("sentence examples") {
    CHECK(tokens("Hi. Bye.", Granularity::sentence) == V{"Hi.", "Bye."});
    CHECK(tokens("Dr. Smith left. He returned.", Granularity::sentence) == V{"Dr. Smith left.", "He returned."});
    CHECK(tokens("See Fig. 3 and Eq. 2. Done!", Granularity::sentence) == V{"See Fig. 3 and Eq. 2.", "Done!"});
    CHECK(tokens("Shown by Smith et al. in 2010. Next?", Granularity::sentence) ==
          V{"Shown by Smith et al. in 2010.", "Next?"});
    CHECK(tokens("Use e.g. tea, i.e. a drink. Fine.", Granularity::sentence) == V{"Use e.g. tea, i.e. a drink.", "Fine."});
    CHECK(tokens("Pi is 3.14 roughly. Yes.", Granularity::sentence) == V{"Pi is 3.14 roughly.", "Yes."});
    CHECK(tokens("Wait\xE2\x80\xA6 ok. \"Quoted.\" Then", Granularity::sentence) ==
          V{"Wait\xE2\x80\xA6", "ok.", "\"Quoted.\"", "Then"});
    CHECK(tokens("no stop here\n\nnext paragraph", Granularity::sentence) == V{"no stop here", "next paragraph"});
    CHECK(tokens("Really?! Yes.", Granularity::sentence) == V{"Really?!", "Yes."});
}

TEST_CASE("word examples") {
    CHECK(tokens("a b", Granularity::word) == V{"a", "b"});
    CHECK(tokens("Hello, world! x2-y", Granularity::word) == V{"Hello", "world", "x2", "y"});
    CHECK(tokens("caf\xC3\xA9 na\xC3\xAFve", Granularity::word) == V{"caf\xC3\xA9", "na\xC3\xAFve"});
    CHECK(tokens("Case case", Granularity::word) == V{"Case", "case"});
}

TEST_CASE("paragraph examples") {
    CHECK(tokens("one\ntwo\n\n\nthree  \n \nfour", Granularity::paragraph) == V{"one\ntwo", "three", "four"});
    CHECK(tokens("\n\n", Granularity::paragraph).empty());
}

TEST_CASE("empty text gives an empty sequence at every level") {
    for (auto level : kAllGranularities) CHECK(segment(std::string_view(""), level).size() == 0);
}

TEST_CASE("character level counts scalar values") {
    const std::string text = "a\xC3\xA9 \xF0\x9F\x98\x80\n";
    const auto seq = segment(text, Granularity::character);
    CHECK(seq.size() == 5);
    CHECK(seq.tokens[3] == U"\U0001F600");
}

TEST_CASE("spans reconstruct the source and round-trip through join") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        WriterProfile profile;
        profile.kind = kAllWriterKinds[trial % 6];
        profile.n_versions = 6;
        profile.text_scale = 6;
        profile.seed = rng();
        const auto sim = simulate(profile);
        std::string text = sim.history.versions.back().text;
        if (trial % 3 == 0) text = "  Dr. Who? e.g. 3.5 items\xE2\x80\xA6 \n\n" + text + "\n\nTail without stop";
        const std::u32string cps = to_codepoints(text);
        for (auto level : kAllGranularities) {
            CAPTURE(trial);
            CAPTURE(to_string(level));
            const auto seq = segment(std::u32string_view(cps), level);
            REQUIRE(seq.tokens.size() == seq.spans.size());
            std::size_t prev_end = 0;
            std::u32string rebuilt;
            for (std::size_t i = 0; i < seq.size(); ++i) {
                const Span s = seq.spans[i];
                REQUIRE(s.begin >= prev_end);
                REQUIRE(s.end > s.begin);
                CHECK(cps.substr(s.begin, s.end - s.begin) == seq.tokens[i]);
                rebuilt += cps.substr(prev_end, s.begin - prev_end);
                rebuilt += seq.tokens[i];
                prev_end = s.end;
            }
            rebuilt += cps.substr(prev_end);
            CHECK(rebuilt == cps);
            const auto again = segment(std::u32string_view(join(seq)), level);
            CHECK(again.tokens == seq.tokens);
        }
    }
}

TEST_CASE("granularity names") {
    CHECK(parse_granularity("char") == Granularity::character);
    CHECK(parse_granularity("paragraph") == Granularity::paragraph);
    CHECK(std::string(to_string(Granularity::word)) == "word");
    CHECK_THROWS(parse_granularity("line"));
}
