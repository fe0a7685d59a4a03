#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace textevo {

struct Version {
    std::size_t index = 0;
    std::optional<std::int64_t> timestamp;  // seconds since the Unix epoch, UTC
    std::string text;                       // NFC, '\n' line endings
};

struct VersionHistory {
    std::string author_id;
    std::vector<Version> versions;
    std::map<std::string, std::string> source_meta;

    std::size_t size() const noexcept { return versions.size(); }
    const std::string& text(std::size_t i) const { return versions.at(i).text; }
};

struct FilterRecord {
    std::string author_id;
    std::string reason;
};

struct Corpus {
    std::vector<VersionHistory> histories;
    std::vector<FilterRecord> filter_log;
};

/// Builds a history from raw texts, normalizing each one.
VersionHistory make_history(std::string author_id, const std::vector<std::string>& texts);

/// One history from a snapshot directory (every *.txt file, lexicographic
/// order) or from a record file holding exactly one author.
VersionHistory load_history(const std::filesystem::path& source);

/// Line-delimited JSON records {author_id, timestamp?, text}; one history per
/// author in order of first appearance.
std::vector<VersionHistory> load_records(const std::filesystem::path& file);

/// zip / tar / tar.gz holding one snapshot directory per author.
std::vector<VersionHistory> load_archive(const std::filesystem::path& file);

/// Dispatches on what `source` is: record file, archive, snapshot directory,
/// or a directory whose subdirectories are snapshot directories.
std::vector<VersionHistory> load_histories(const std::filesystem::path& source);

VersionHistory dedup_consecutive(VersionHistory history);

/// Keeps histories with at least `min_changes` versions after the first.
Corpus filter_active(Corpus corpus, std::size_t min_changes = 10);

/// load + dedup + filter over several inputs. Duplicate author ids across
/// inputs are an error.
Corpus load_corpus(const std::vector<std::filesystem::path>& inputs, std::size_t min_changes = 10);

/// "YYYY-MM-DD[THH:MM[:SS[.fff]]][Z|+HH:MM|-HH:MM]" to epoch seconds.
std::optional<std::int64_t> parse_iso8601(std::string_view text);

}  // namespace textevo
