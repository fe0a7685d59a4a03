#include "textevo/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <set>

#include "textevo/archive.hpp"
#include "textevo/error.hpp"
#include "textevo/unicode.hpp"

namespace textevo {

namespace fs = std::filesystem;

namespace {

std::string read_bytes(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(Errc::unreadable_source, "cannot read " + file.string());
    std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad()) throw Error(Errc::unreadable_source, "read error on " + file.string());
    return bytes;
}

bool is_snapshot_name(const fs::path& p) { return p.extension() == ".txt" && !p.filename().string().starts_with("."); }

bool is_record_file(const fs::path& p) {
    const auto ext = p.extension();
    return ext == ".jsonl" || ext == ".ndjson";
}

std::vector<fs::path> snapshot_files(const fs::path& dir) {
    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (entry.is_regular_file() && is_snapshot_name(entry.path())) files.push_back(entry.path());
    }
    if (ec) throw Error(Errc::unreadable_source, "cannot list " + dir.string() + ": " + ec.message());
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
    return files;
}

VersionHistory history_from_texts(std::string author_id, std::vector<Version> versions) {
    VersionHistory h;
    h.author_id = std::move(author_id);
    h.versions = std::move(versions);
    for (std::size_t i = 0; i < h.versions.size(); ++i) h.versions[i].index = i;
    return h;
}

VersionHistory load_snapshot_directory(const fs::path& dir) {
    const auto files = snapshot_files(dir);
    if (files.empty()) throw Error(Errc::zero_snapshots, "zero snapshots in " + dir.string());
    std::vector<Version> versions;
    versions.reserve(files.size());
    for (const auto& f : files) {
        Version v;
        try {
            v.text = normalize_text(read_bytes(f));
        } catch (const Error& e) {
            throw Error(e.code(), f.string() + ": " + e.what());
        }
        versions.push_back(std::move(v));
    }
    auto h = history_from_texts(fs::absolute(dir).lexically_normal().filename().string(), std::move(versions));
    if (h.author_id.empty()) h.author_id = fs::absolute(dir).lexically_normal().parent_path().filename().string();
    h.source_meta["format"] = "snapshot_directory";
    h.source_meta["source"] = dir.string();
    return h;
}

struct Record {
    std::optional<std::int64_t> timestamp;
    std::string text;
};

}  // namespace

std::optional<std::int64_t> parse_iso8601(std::string_view s) {
    auto number = [&](std::size_t at, std::size_t len, int& out) {
        if (at + len > s.size()) return false;
        const auto* first = s.data() + at;
        auto [ptr, ec] = std::from_chars(first, first + len, out);
        return ec == std::errc{} && ptr == first + len;
    };
    int y = 0, mo = 0, d = 0, hh = 0, mm = 0, ss = 0;
    if (!number(0, 4, y) || s.size() < 10 || s[4] != '-' || !number(5, 2, mo) || s[7] != '-' || !number(8, 2, d)) {
        return std::nullopt;
    }
    std::size_t at = 10;
    if (at < s.size() && (s[at] == 'T' || s[at] == ' ')) {
        if (!number(at + 1, 2, hh) || at + 3 >= s.size() || s[at + 3] != ':' || !number(at + 4, 2, mm)) {
            return std::nullopt;
        }
        at += 6;
        if (at < s.size() && s[at] == ':') {
            if (!number(at + 1, 2, ss)) return std::nullopt;
            at += 3;
            if (at < s.size() && (s[at] == '.' || s[at] == ',')) {
                ++at;
                const std::size_t digits = at;
                while (at < s.size() && s[at] >= '0' && s[at] <= '9') ++at;
                if (at == digits) return std::nullopt;
            }
        }
    }
    int offset = 0;
    if (at < s.size()) {
        if (s[at] == 'Z' && at + 1 == s.size()) {
            ++at;
        } else if (s[at] == '+' || s[at] == '-') {
            const int sign = s[at] == '-' ? -1 : 1;
            int oh = 0, om = 0;
            if (!number(at + 1, 2, oh)) return std::nullopt;
            std::size_t p = at + 3;
            if (p < s.size() && s[p] == ':') ++p;
            if (!number(p, 2, om) || p + 2 != s.size()) return std::nullopt;
            offset = sign * (oh * 3600 + om * 60);
            at = s.size();
        } else {
            return std::nullopt;
        }
    }
    if (at != s.size() || hh > 23 || mm > 59 || ss > 60) return std::nullopt;
    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    const auto days = sys_days{ymd}.time_since_epoch().count();
    return static_cast<std::int64_t>(days) * 86400 + hh * 3600 + mm * 60 + ss - offset;
}

VersionHistory make_history(std::string author_id, const std::vector<std::string>& texts) {
    std::vector<Version> versions;
    versions.reserve(texts.size());
    for (const auto& t : texts) versions.push_back({0, std::nullopt, normalize_text(t)});
    return history_from_texts(std::move(author_id), std::move(versions));
}

std::vector<VersionHistory> load_records(const fs::path& file) {
    const std::string bytes = read_bytes(file);
    std::vector<std::string> order;
    std::map<std::string, std::vector<Record>> by_author;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < bytes.size()) {
        std::size_t end = bytes.find('\n', pos);
        if (end == std::string::npos) end = bytes.size();
        std::string_view line(bytes.data() + pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        const std::string where = file.string() + ":" + std::to_string(line_no);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            // nlohmann rejects malformed UTF-8 with a parse error too.
            throw Error(Errc::undecodable_text, where + ": " + e.what());
        }
        if (!j.is_object() || !j.contains("author_id") || !j["author_id"].is_string() || !j.contains("text") ||
            !j["text"].is_string()) {
            throw Error(Errc::unreadable_source, where + ": record needs string fields author_id and text");
        }
        Record rec;
        if (j.contains("timestamp") && !j["timestamp"].is_null()) {
            if (!j["timestamp"].is_string()) throw Error(Errc::unreadable_source, where + ": timestamp must be a string");
            rec.timestamp = parse_iso8601(j["timestamp"].get<std::string>());
            if (!rec.timestamp) throw Error(Errc::unreadable_source, where + ": bad ISO-8601 timestamp");
        }
        try {
            rec.text = normalize_text(j["text"].get<std::string>());
        } catch (const Error& e) {
            throw Error(e.code(), where + ": " + e.what());
        }
        const auto author = j["author_id"].get<std::string>();
        auto [it, inserted] = by_author.try_emplace(author);
        if (inserted) order.push_back(author);
        it->second.push_back(std::move(rec));
    }
    if (order.empty()) throw Error(Errc::zero_snapshots, "zero snapshots in " + file.string());

    std::vector<VersionHistory> out;
    for (const auto& author : order) {
        auto& recs = by_author[author];
        const auto stamped = std::count_if(recs.begin(), recs.end(), [](const Record& r) { return r.timestamp.has_value(); });
        if (stamped != 0 && static_cast<std::size_t>(stamped) != recs.size()) {
            throw Error(Errc::mixed_timestamps, file.string() + ": author " + author + " mixes records with and without timestamps");
        }
        if (stamped != 0) {
            std::stable_sort(recs.begin(), recs.end(),
                             [](const Record& a, const Record& b) { return *a.timestamp < *b.timestamp; });
        }
        std::vector<Version> versions;
        versions.reserve(recs.size());
        for (auto& r : recs) versions.push_back({0, r.timestamp, std::move(r.text)});
        auto h = history_from_texts(author, std::move(versions));
        h.source_meta["format"] = "record_file";
        h.source_meta["source"] = file.string();
        out.push_back(std::move(h));
    }
    return out;
}

std::vector<VersionHistory> load_archive(const fs::path& file) {
    const auto entries = read_archive(file);
    // Directory inside the archive -> (file name -> index).
    std::map<std::string, std::map<std::string, std::size_t>> groups;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const fs::path p(entries[i].path);
        if (!is_snapshot_name(p)) continue;
        groups[p.parent_path().generic_string()][p.filename().string()] = i;
    }
    if (groups.empty()) throw Error(Errc::zero_snapshots, "zero snapshots in " + file.string());

    std::vector<VersionHistory> out;
    std::set<std::string> seen;
    for (const auto& [dir, files] : groups) {
        std::string author = fs::path(dir).filename().string();
        if (author.empty()) author = file.stem().string();
        if (!seen.insert(author).second) throw Error(Errc::invalid_argument, "archive holds two directories named " + author);
        std::vector<Version> versions;
        for (const auto& [name, idx] : files) {
            Version v;
            try {
                v.text = normalize_text(entries[idx].data);
            } catch (const Error& e) {
                throw Error(e.code(), file.string() + ":" + entries[idx].path + ": " + e.what());
            }
            versions.push_back(std::move(v));
        }
        auto h = history_from_texts(author, std::move(versions));
        h.source_meta["format"] = "archive";
        h.source_meta["source"] = file.string() + ":" + dir;
        out.push_back(std::move(h));
    }
    return out;
}

VersionHistory load_history(const fs::path& source) {
    std::error_code ec;
    if (fs::is_directory(source, ec)) return load_snapshot_directory(source);
    if (!fs::is_regular_file(source, ec)) throw Error(Errc::unreadable_source, "no such source: " + source.string());
    auto histories = looks_like_archive(source) ? load_archive(source) : load_records(source);
    if (histories.size() != 1) {
        throw Error(Errc::invalid_argument, source.string() + " holds " + std::to_string(histories.size()) + " authors");
    }
    return std::move(histories.front());
}

std::vector<VersionHistory> load_histories(const fs::path& source) {
    std::error_code ec;
    if (fs::is_regular_file(source, ec)) {
        if (looks_like_archive(source)) return load_archive(source);
        if (is_record_file(source)) return load_records(source);
        throw Error(Errc::unreadable_source, "unrecognized input file " + source.string());
    }
    if (!fs::is_directory(source, ec)) throw Error(Errc::unreadable_source, "no such source: " + source.string());
    if (!snapshot_files(source).empty()) return {load_snapshot_directory(source)};

    std::vector<fs::path> dirs;
    for (const auto& entry : fs::directory_iterator(source, ec)) {
        if (entry.is_directory()) dirs.push_back(entry.path());
    }
    std::sort(dirs.begin(), dirs.end());
    std::vector<VersionHistory> out;
    for (const auto& d : dirs) {
        if (!snapshot_files(d).empty()) out.push_back(load_snapshot_directory(d));
    }
    if (out.empty()) throw Error(Errc::zero_snapshots, "zero snapshots under " + source.string());
    return out;
}

VersionHistory dedup_consecutive(VersionHistory history) {
    std::vector<Version> kept;
    kept.reserve(history.versions.size());
    for (auto& v : history.versions) {
        if (!kept.empty() && kept.back().text == v.text) continue;
        kept.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < kept.size(); ++i) kept[i].index = i;
    history.versions = std::move(kept);
    return history;
}

Corpus filter_active(Corpus corpus, std::size_t min_changes) {
    if (min_changes == 0) throw Error(Errc::invalid_argument, "min_changes must be positive");
    Corpus out;
    out.filter_log = std::move(corpus.filter_log);
    for (auto& h : corpus.histories) {
        const std::size_t changes = h.size() > 0 ? h.size() - 1 : 0;
        if (changes >= min_changes) {
            out.histories.push_back(std::move(h));
        } else {
            out.filter_log.push_back({h.author_id, "only " + std::to_string(changes) + " changes (minimum " +
                                                       std::to_string(min_changes) + ")"});
        }
    }
    return out;
}

Corpus load_corpus(const std::vector<fs::path>& inputs, std::size_t min_changes) {
    Corpus corpus;
    std::set<std::string> ids;
    for (const auto& input : inputs) {
        for (auto& h : load_histories(input)) {
            if (!ids.insert(h.author_id).second) throw Error(Errc::invalid_argument, "duplicate author id " + h.author_id);
            corpus.histories.push_back(dedup_consecutive(std::move(h)));
        }
    }
    return filter_active(std::move(corpus), min_changes);
}

}  // namespace textevo
