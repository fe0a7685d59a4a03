#include <doctest.h>

#include "support.hpp"
#include "textevo/archive.hpp"
#include "textevo/corpus.hpp"
#include "textevo/error.hpp"

using namespace textevo;
using testing::TempDir;
using testing::write_file;

namespace {

std::vector<std::string> texts(const VersionHistory& h) {
    std::vector<std::string> out;
    for (const auto& v : h.versions) out.push_back(v.text);
    return out;
}

template <class F>
Errc error_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return Errc::invalid_argument;
}

}  // namespace

TEST_CASE("snapshot directory loads in lexicographic order") {
    TempDir tmp;
    write_file(tmp / "alice/001.txt", "ab");
    write_file(tmp / "alice/000.txt", "a");
    write_file(tmp / "alice/truth.json", "{}");
    const auto h = load_history(tmp / "alice");
    CHECK(h.author_id == "alice");
    CHECK(texts(h) == std::vector<std::string>{"a", "ab"});
    CHECK(h.versions[1].index == 1);
    CHECK_FALSE(h.versions[0].timestamp.has_value());
}

TEST_CASE("empty snapshot directory is an error") {
    TempDir tmp;
    std::filesystem::create_directories(tmp / "empty");
    CHECK(error_code([&] { load_history(tmp / "empty"); }) == Errc::zero_snapshots);
    CHECK(error_code([&] { load_history(tmp / "missing"); }) == Errc::unreadable_source);
}

TEST_CASE("text is normalized: BOM, line endings, composition") {
    TempDir tmp;
    write_file(tmp / "n/000.txt", "\xEF\xBB\xBFline1\r\nline2\rline3");
    write_file(tmp / "n/001.txt", "cafe\xCC\x81");
    const auto h = load_history(tmp / "n");
    CHECK(h.text(0) == "line1\nline2\nline3");
    CHECK(h.text(1) == "caf\xC3\xA9");
}

TEST_CASE("invalid UTF-8 is reported") {
    TempDir tmp;
    write_file(tmp / "bad/000.txt", "ok\xC3(");
    CHECK(error_code([&] { load_history(tmp / "bad"); }) == Errc::undecodable_text);
}

TEST_CASE("record file sorts by timestamp and keeps authors apart") {
    TempDir tmp;
    write_file(tmp / "r.jsonl",
               R"({"author_id":"a","timestamp":"2024-01-01T10:06:00Z","text":"third"})"
               "\n"
               R"({"author_id":"b","text":"x"})"
               "\n"
               R"({"author_id":"a","timestamp":"2024-01-01T10:00:00Z","text":"first"})"
               "\n\n"
               R"({"author_id":"a","timestamp":"2024-01-01T10:03:00+00:00","text":"second"})"
               "\n"
               R"({"author_id":"b","text":"y"})"
               "\n");
    const auto hs = load_histories(tmp / "r.jsonl");
    REQUIRE(hs.size() == 2);
    CHECK(hs[0].author_id == "a");
    CHECK(texts(hs[0]) == std::vector<std::string>{"first", "second", "third"});
    CHECK(*hs[0].versions[0].timestamp == 1704103200);
    CHECK(texts(hs[1]) == std::vector<std::string>{"x", "y"});
}

TEST_CASE("record file errors") {
    TempDir tmp;
    write_file(tmp / "mixed.jsonl",
               R"({"author_id":"a","timestamp":"2024-01-01","text":"x"})"
               "\n"
               R"({"author_id":"a","text":"y"})"
               "\n");
    CHECK(error_code([&] { load_histories(tmp / "mixed.jsonl"); }) == Errc::mixed_timestamps);
    write_file(tmp / "missing.jsonl", R"({"author_id":"a"})");
    CHECK(error_code([&] { load_histories(tmp / "missing.jsonl"); }) == Errc::unreadable_source);
    write_file(tmp / "empty.jsonl", "\n");
    CHECK(error_code([&] { load_histories(tmp / "empty.jsonl"); }) == Errc::zero_snapshots);
    write_file(tmp / "ts.jsonl", R"({"author_id":"a","timestamp":"yesterday","text":"x"})");
    CHECK(error_code([&] { load_histories(tmp / "ts.jsonl"); }) == Errc::unreadable_source);
}

TEST_CASE("ISO-8601 parsing") {
    CHECK(parse_iso8601("1970-01-01") == 0);
    CHECK(parse_iso8601("1970-01-02T00:00:01Z") == 86401);
    CHECK(parse_iso8601("2024-02-29T12:00:00+02:00") == 1709200800);
    CHECK(parse_iso8601("2024-02-29T12:00:00.250Z") == 1709208000);
    CHECK_FALSE(parse_iso8601("2023-02-29").has_value());
    CHECK_FALSE(parse_iso8601("2024-13-01").has_value());
    CHECK_FALSE(parse_iso8601("nonsense").has_value());
}

TEST_CASE("dedup removes only consecutive duplicates") {
    CHECK(texts(dedup_consecutive(make_history("x", {"a", "a", "b"}))) == std::vector<std::string>{"a", "b"});
    CHECK(texts(dedup_consecutive(make_history("x", {"a", "b", "a"}))) == std::vector<std::string>{"a", "b", "a"});
    CHECK(texts(dedup_consecutive(make_history("x", {"a"}))) == std::vector<std::string>{"a"});
    const auto once = dedup_consecutive(make_history("x", {"a", "a", "b", "b", "b", "c", "a", "a"}));
    const auto twice = dedup_consecutive(once);
    CHECK(texts(once) == texts(twice));
    for (std::size_t i = 0; i < once.size(); ++i) CHECK(once.versions[i].index == i);
}

TEST_CASE("dedup compares normalized text") {
    const auto h = dedup_consecutive(make_history("x", {"caf\xC3\xA9", "cafe\xCC\x81"}));
    CHECK(h.size() == 1);
}

TEST_CASE("activity filter counts versions beyond the first") {
    Corpus c;
    std::vector<std::string> eleven, five;
    for (int i = 0; i < 11; ++i) eleven.push_back(std::string(i + 1, 'a'));
    for (int i = 0; i < 5; ++i) five.push_back(std::string(i + 1, 'b'));
    c.histories.push_back(make_history("eleven", eleven));
    c.histories.push_back(make_history("five", five));
    c.histories.push_back(make_history("one", {"z"}));
    const auto kept = filter_active(c, 10);
    REQUIRE(kept.histories.size() == 1);
    CHECK(kept.histories[0].author_id == "eleven");
    CHECK(kept.filter_log.size() == 2);

    const auto weakest = filter_active(c, 1);
    CHECK(weakest.histories.size() == 2);
    CHECK(weakest.histories.size() + weakest.filter_log.size() == c.histories.size());
    CHECK(weakest.filter_log[0].author_id == "one");
    CHECK_THROWS_AS(filter_active(c, 0), Error);
}

TEST_CASE("tar, tar.gz and zip archives hold one author per directory") {
    TempDir tmp;
    const std::vector<testing::Entry> entries = {{"corpus/bob/000.txt", "b0"},
                                                 {"corpus/bob/001.txt", "b1"},
                                                 {"corpus/amy/001.txt", "a1"},
                                                 {"corpus/amy/000.txt", "a0"},
                                                 {"corpus/amy/notes.md", "ignored"}};
    write_file(tmp / "c.tar", testing::make_tar(entries));
    write_file(tmp / "c.tar.gz", testing::gzip(testing::make_tar(entries)));
    write_file(tmp / "c.zip", testing::make_zip(entries, true));
    write_file(tmp / "s.zip", testing::make_zip(entries, false));
    for (const char* name : {"c.tar", "c.tar.gz", "c.zip", "s.zip"}) {
        CAPTURE(name);
        const auto hs = load_histories(tmp / name);
        REQUIRE(hs.size() == 2);
        CHECK(hs[0].author_id == "amy");
        CHECK(texts(hs[0]) == std::vector<std::string>{"a0", "a1"});
        CHECK(hs[1].author_id == "bob");
        CHECK(texts(hs[1]) == std::vector<std::string>{"b0", "b1"});
    }
}

TEST_CASE("archive errors") {
    TempDir tmp;
    write_file(tmp / "dup.tar", testing::make_tar({{"x/amy/000.txt", "a"}, {"y/amy/000.txt", "b"}}));
    CHECK(error_code([&] { load_histories(tmp / "dup.tar"); }) == Errc::invalid_argument);
    std::string broken = testing::make_tar({{"amy/000.txt", "hello"}});
    broken[150] ^= 0x5a;  // checksum field
    write_file(tmp / "broken.tar", broken);
    CHECK(error_code([&] { load_histories(tmp / "broken.tar"); }) == Errc::archive_format);
    std::string zip = testing::make_zip({{"amy/000.txt", "hello world"}}, false);
    zip[30 + 11] ^= 0x01;  // payload byte, so the CRC no longer matches
    write_file(tmp / "crc.zip", zip);
    CHECK(error_code([&] { load_histories(tmp / "crc.zip"); }) == Errc::archive_format);
}

TEST_CASE("directory of snapshot directories and duplicate ids across inputs") {
    TempDir tmp;
    write_file(tmp / "corpus/a/000.txt", "a");
    write_file(tmp / "corpus/a/001.txt", "ab");
    write_file(tmp / "corpus/b/000.txt", "b");
    write_file(tmp / "corpus/b/001.txt", "b");
    write_file(tmp / "corpus/b/002.txt", "bc");
    const auto corpus = load_corpus({tmp / "corpus"}, 1);
    REQUIRE(corpus.histories.size() == 2);
    CHECK(corpus.histories[1].size() == 2);  // deduplicated
    CHECK(error_code([&] { load_corpus({tmp / "corpus", tmp / "corpus/a"}, 1); }) == Errc::invalid_argument);
}

TEST_CASE("loading is deterministic") {
    TempDir tmp;
    for (int i = 0; i < 12; ++i) write_file(tmp / ("d/" + std::to_string(100 + i) + ".txt"), std::to_string(i));
    CHECK(texts(load_history(tmp / "d")) == texts(load_history(tmp / "d")));
}
