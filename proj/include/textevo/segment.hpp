#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace textevo {

enum class Granularity { character, word, sentence, paragraph };

inline constexpr Granularity kAllGranularities[] = {
    Granularity::character, Granularity::word, Granularity::sentence, Granularity::paragraph};

const char* to_string(Granularity level);
/// Accepts "character"/"char", "word", "sentence", "paragraph".
Granularity parse_granularity(std::string_view name);

/// Half-open range of code point offsets into the segmented text.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct TokenSequence {
    Granularity level = Granularity::character;
    std::vector<std::u32string> tokens;
    std::vector<Span> spans;

    std::size_t size() const noexcept { return tokens.size(); }
};

/// Tokens never carry leading or trailing whitespace except at the character
/// level, where every code point (whitespace included) is a token.
///
/// Sentences end at a run of terminal punctuation (. ! ? U+2026), optionally
/// followed by closing quotes or brackets, when whitespace follows; a blank
/// line always ends a sentence. A period closing an entry of the abbreviation
/// list (Dr. Mr. Mrs. Prof. Fig. Eq. e.g. i.e. "et al." vs.) does not end one.
TokenSequence segment(std::u32string_view text, Granularity level);
TokenSequence segment(std::string_view utf8_text, Granularity level);

/// Canonical text for a token sequence: characters concatenated, words joined
/// by a space, sentences and paragraphs joined by a blank line. Segmenting the
/// result at the same level gives back the same tokens.
std::u32string join(const TokenSequence& tokens);

}  // namespace textevo
