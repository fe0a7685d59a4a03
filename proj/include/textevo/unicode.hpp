#pragma once

#include <string>
#include <string_view>

namespace textevo {

/// Decodes UTF-8, unifies line endings to '\n', strips a leading BOM and
/// applies canonical composition (NFC). Throws Error(undecodable_text).
std::string normalize_text(std::string_view raw);

/// Strict UTF-8 to code points. Throws Error(undecodable_text).
std::u32string to_codepoints(std::string_view utf8);

std::string to_utf8(std::u32string_view codepoints);

bool is_alnum(char32_t c);
bool is_space(char32_t c);

}  // namespace textevo
