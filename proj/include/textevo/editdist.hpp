#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "textevo/segment.hpp"

namespace textevo {

struct VersionHistory;

// Edit distance runs over symbol strings. At the character level a symbol is
// the code point itself; at coarser levels each distinct token is interned to
// an id, so equal tokens compare equal in O(1).
using SymbolString = std::u32string;
using SymbolView = std::u32string_view;

class SymbolTable {
public:
    char32_t intern(const std::u32string& token);
    SymbolString encode(const TokenSequence& tokens);
    std::size_t size() const noexcept { return ids_.size(); }

private:
    std::unordered_map<std::u32string, char32_t> ids_;
};

/// Every version of a history as symbol strings at one level, sharing one
/// symbol table.
std::vector<SymbolString> encode_versions(const VersionHistory& history, Granularity level);

enum class EditKind : std::uint8_t { match, substitute, insert, remove };

const char* to_string(EditKind kind);

struct EditOp {
    EditKind kind = EditKind::match;
    std::optional<std::size_t> a_index;
    std::optional<std::size_t> b_index;

    bool operator==(const EditOp&) const = default;
};

struct EditScript {
    std::vector<EditOp> ops;
    std::size_t cost = 0;

    bool operator==(const EditScript&) const = default;
};

/// The change sequence B: one bit per alignment column, set unless the column
/// is a match.
struct EditMask {
    std::vector<std::uint8_t> bits;
    Granularity level = Granularity::character;

    std::size_t ones() const noexcept;
};

/// Unit-cost Levenshtein distance. Throws Error(level_mismatch).
std::size_t edit_distance(const TokenSequence& a, const TokenSequence& b);
std::size_t edit_distance(SymbolView a, SymbolView b);

/// Optimal alignment. Backtrace ties prefer match, then substitute, then
/// remove, then insert.
EditScript edit_script(const TokenSequence& a, const TokenSequence& b);
EditScript edit_script(SymbolView a, SymbolView b);

EditMask edit_mask(const EditScript& script, Granularity level);

/// Replays a script against `a`, taking inserted and substituted symbols from
/// `b`. Yields `b` for any valid script.
template <class Seq>
Seq apply_script(const Seq& a, const Seq& b, const EditScript& script) {
    Seq out;
    for (const EditOp& op : script.ops) {
        switch (op.kind) {
        case EditKind::match:
            out.push_back(a[*op.a_index]);
            break;
        case EditKind::substitute:
        case EditKind::insert:
            out.push_back(b[*op.b_index]);
            break;
        case EditKind::remove:
            break;
        }
    }
    return out;
}

/// Checks the EditScript invariants: index coverage, ordering, cost.
bool is_well_formed(const EditScript& script, std::size_t a_len, std::size_t b_len);

}  // namespace textevo
