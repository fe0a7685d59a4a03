#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "textevo/corpus.hpp"

namespace textevo {

enum class WriterKind { append_only, focal_reviser, uniform_reviser, explorer, word_rewriter, char_flipper };

inline constexpr WriterKind kAllWriterKinds[] = {WriterKind::append_only,   WriterKind::focal_reviser,
                                                 WriterKind::uniform_reviser, WriterKind::explorer,
                                                 WriterKind::word_rewriter, WriterKind::char_flipper};

const char* to_string(WriterKind kind);
WriterKind parse_writer_kind(std::string_view name);

struct WriterProfile {
    WriterKind kind = WriterKind::append_only;
    std::size_t n_versions = 20;
    std::size_t text_scale = 10;  // sentences in the final draft
    double churn_fraction = 0.4;  // explorer: churn length / final length
    std::optional<std::size_t> focal_target;  // focal_reviser: sentence index
    std::size_t max_words_per_rewrite = 3;    // word_rewriter
    std::uint64_t seed = 0;
};

/// What the generator did between version - 1 and version.
struct TruthEvent {
    std::size_t version = 0;
    std::string kind;  // append, substitute_sentence, insert_churn, remove_churn, rewrite_word, flip_char
    std::optional<std::size_t> sentence;  // sentence index in the previous version
    std::optional<std::size_t> position;  // character offset in the previous version
    std::size_t chars = 0;
};

struct TruthLog {
    std::vector<TruthEvent> events;
    std::vector<std::size_t> length;       // characters per version
    std::vector<std::size_t> churn_chars;  // explorer: churn present per version
    std::vector<std::size_t> body_chars;   // explorer: final-draft characters present per version
};

struct SimulatedHistory {
    VersionHistory history;
    TruthLog truth;
};

/// Deterministic for a fixed profile. All versions are pairwise distinct.
/// Throws Error(infeasible) for impossible parameters.
SimulatedHistory simulate(const WriterProfile& profile, std::string author_id = "synthetic");

/// Lower bound on max_t h(t) implied by the explorer's bookkeeping. For every
/// version, the first version and the churn-free body are subsequences of it,
/// so ED to first = len - len(first) and ED to last >= churn - missing body.
double planted_exploration_bound(const TruthLog& truth);

std::string truth_json(const TruthLog& truth, const WriterProfile& profile);

/// Writes 000.txt, 001.txt, ... and truth.json into `dir`.
void write_snapshot_directory(const SimulatedHistory& sim, const WriterProfile& profile,
                              const std::filesystem::path& dir);

/// The bundled vocabulary used for all generated prose.
std::span<const std::string_view> wordlist();

}  // namespace textevo
