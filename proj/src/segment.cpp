#include "textevo/segment.hpp"

#include <array>
#include <string>

#include "textevo/error.hpp"
#include "textevo/unicode.hpp"

namespace textevo {

const char* to_string(Granularity level) {
    switch (level) {
    case Granularity::character: return "character";
    case Granularity::word: return "word";
    case Granularity::sentence: return "sentence";
    case Granularity::paragraph: return "paragraph";
    }
    return "unknown";
}

Granularity parse_granularity(std::string_view name) {
    if (name == "character" || name == "char") return Granularity::character;
    if (name == "word") return Granularity::word;
    if (name == "sentence") return Granularity::sentence;
    if (name == "paragraph") return Granularity::paragraph;
    throw Error(Errc::invalid_argument, "unknown granularity: " + std::string(name));
}

namespace {

constexpr std::array<std::u32string_view, 9> kAbbreviations = {
    U"Dr.", U"Mr.", U"Mrs.", U"Prof.", U"Fig.", U"Eq.", U"e.g.", U"i.e.", U"vs.",
};

bool is_horizontal_space(char32_t c) { return c != U'\n' && is_space(c); }

bool is_terminal(char32_t c) { return c == U'.' || c == U'!' || c == U'?' || c == U'…'; }

bool is_closer(char32_t c) {
    return c == U'"' || c == U'\'' || c == U')' || c == U']' || c == U'}' || c == U'”' || c == U'’' ||
           c == U'»';
}

bool is_opener(char32_t c) {
    return c == U'"' || c == U'\'' || c == U'(' || c == U'[' || c == U'{' || c == U'“' || c == U'‘' ||
           c == U'«';
}

void push(TokenSequence& out, std::u32string_view text, std::size_t begin, std::size_t end) {
    out.tokens.emplace_back(text.substr(begin, end - begin));
    out.spans.push_back({begin, end});
}

// The whitespace-delimited word ending at `last` (inclusive), opening
// punctuation removed.
std::u32string_view word_ending_at(std::u32string_view text, std::size_t lo, std::size_t last,
                                   std::size_t* word_begin = nullptr) {
    std::size_t b = last + 1;
    while (b > lo && !is_space(text[b - 1])) --b;
    if (word_begin) *word_begin = b;
    while (b <= last && is_opener(text[b])) ++b;
    return text.substr(b, last + 1 - b);
}

bool is_abbreviation(std::u32string_view text, std::size_t lo, std::size_t period) {
    std::size_t word_begin = 0;
    const std::u32string_view word = word_ending_at(text, lo, period, &word_begin);
    for (std::u32string_view abbr : kAbbreviations) {
        if (word == abbr) return true;
    }
    if (word == U"al.") {
        std::size_t p = word_begin;
        while (p > lo && is_space(text[p - 1])) --p;
        if (p > lo && word_ending_at(text, lo, p - 1) == U"et") return true;
    }
    return false;
}

// Spans of paragraphs: text between blank lines, trimmed.
std::vector<Span> paragraph_spans(std::u32string_view text) {
    std::vector<Span> spans;
    const std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        while (i < n && is_space(text[i])) ++i;
        if (i >= n) break;
        const std::size_t begin = i;
        std::size_t end = i;
        while (i < n) {
            if (text[i] == U'\n') {
                std::size_t j = i + 1;
                while (j < n && is_horizontal_space(text[j])) ++j;
                if (j < n && text[j] == U'\n') break;  // blank line
                if (j >= n) break;
            }
            if (!is_space(text[i])) end = i + 1;
            ++i;
        }
        spans.push_back({begin, end});
    }
    return spans;
}

void split_sentences(std::u32string_view text, Span para, TokenSequence& out) {
    std::size_t i = para.begin;
    std::size_t start = para.begin;
    while (i < para.end) {
        if (!is_terminal(text[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < para.end && is_terminal(text[j])) ++j;
        std::size_t e = j;
        while (e < para.end && is_closer(text[e])) ++e;
        const bool at_gap = e == para.end || is_space(text[e]);
        const bool lone_period = (j - i == 1) && text[i] == U'.';
        if (at_gap && !(lone_period && is_abbreviation(text, para.begin, i))) {
            push(out, text, start, e);
            start = e;
            while (start < para.end && is_space(text[start])) ++start;
            i = start;
        } else {
            i = e;
        }
    }
    if (start < para.end) push(out, text, start, para.end);
}

}  // namespace

TokenSequence segment(std::u32string_view text, Granularity level) {
    TokenSequence out;
    out.level = level;
    switch (level) {
    case Granularity::character:
        out.tokens.reserve(text.size());
        out.spans.reserve(text.size());
        for (std::size_t i = 0; i < text.size(); ++i) push(out, text, i, i + 1);
        break;
    case Granularity::word: {
        std::size_t i = 0;
        while (i < text.size()) {
            if (!is_alnum(text[i])) {
                ++i;
                continue;
            }
            const std::size_t b = i;
            while (i < text.size() && is_alnum(text[i])) ++i;
            push(out, text, b, i);
        }
        break;
    }
    case Granularity::sentence:
        for (const Span& para : paragraph_spans(text)) split_sentences(text, para, out);
        break;
    case Granularity::paragraph:
        for (const Span& para : paragraph_spans(text)) push(out, text, para.begin, para.end);
        break;
    }
    return out;
}

TokenSequence segment(std::string_view utf8_text, Granularity level) {
    return segment(to_codepoints(utf8_text), level);
}

std::u32string join(const TokenSequence& tokens) {
    std::u32string_view sep;
    switch (tokens.level) {
    case Granularity::character: sep = U""; break;
    case Granularity::word: sep = U" "; break;
    case Granularity::sentence:
    case Granularity::paragraph: sep = U"\n\n"; break;
    }
    std::u32string out;
    for (std::size_t i = 0; i < tokens.tokens.size(); ++i) {
        if (i) out += sep;
        out += tokens.tokens[i];
    }
    return out;
}

}  // namespace textevo
