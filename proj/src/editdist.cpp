#include "textevo/editdist.hpp"

#include "textevo/corpus.hpp"
#include "textevo/error.hpp"
#include "textevo/kernels.hpp"
#include "textevo/unicode.hpp"

namespace textevo {

const char* to_string(EditKind kind) {
    switch (kind) {
    case EditKind::match: return "match";
    case EditKind::substitute: return "substitute";
    case EditKind::insert: return "insert";
    case EditKind::remove: return "delete";
    }
    return "unknown";
}

char32_t SymbolTable::intern(const std::u32string& token) {
    auto [it, inserted] = ids_.try_emplace(token, static_cast<char32_t>(ids_.size()));
    return it->second;
}

SymbolString SymbolTable::encode(const TokenSequence& tokens) {
    SymbolString out;
    out.reserve(tokens.size());
    for (const auto& t : tokens.tokens) out.push_back(intern(t));
    return out;
}

std::vector<SymbolString> encode_versions(const VersionHistory& history, Granularity level) {
    std::vector<SymbolString> out;
    out.reserve(history.size());
    if (level == Granularity::character) {
        for (const Version& v : history.versions) out.push_back(to_codepoints(v.text));
        return out;
    }
    SymbolTable table;
    for (const Version& v : history.versions) out.push_back(table.encode(segment(v.text, level)));
    return out;
}

std::size_t EditMask::ones() const noexcept {
    std::size_t n = 0;
    for (auto b : bits) n += b;
    return n;
}

namespace {

void require_same_level(const TokenSequence& a, const TokenSequence& b) {
    if (a.level != b.level) {
        throw Error(Errc::level_mismatch, std::string("cannot compare ") + to_string(a.level) + " tokens with " +
                                              to_string(b.level) + " tokens");
    }
}

std::pair<SymbolString, SymbolString> encode_pair(const TokenSequence& a, const TokenSequence& b) {
    if (a.level == Granularity::character) {
        SymbolString sa, sb;
        sa.reserve(a.size());
        sb.reserve(b.size());
        for (const auto& t : a.tokens) sa.push_back(t.front());
        for (const auto& t : b.tokens) sb.push_back(t.front());
        return {std::move(sa), std::move(sb)};
    }
    SymbolTable table;
    SymbolString sa = table.encode(a);
    SymbolString sb = table.encode(b);
    return {std::move(sa), std::move(sb)};
}

}  // namespace

std::size_t edit_distance(SymbolView a, SymbolView b) { return kernels::levenshtein_bitparallel(a, b); }

std::size_t edit_distance(const TokenSequence& a, const TokenSequence& b) {
    require_same_level(a, b);
    const auto [sa, sb] = encode_pair(a, b);
    return edit_distance(sa, sb);
}

EditScript edit_script(SymbolView a, SymbolView b) { return kernels::alignment_bitparallel(a, b); }

EditScript edit_script(const TokenSequence& a, const TokenSequence& b) {
    require_same_level(a, b);
    const auto [sa, sb] = encode_pair(a, b);
    return edit_script(sa, sb);
}

EditMask edit_mask(const EditScript& script, Granularity level) {
    EditMask mask;
    mask.level = level;
    mask.bits.reserve(script.ops.size());
    for (const EditOp& op : script.ops) mask.bits.push_back(op.kind == EditKind::match ? 0 : 1);
    return mask;
}

bool is_well_formed(const EditScript& script, std::size_t a_len, std::size_t b_len) {
    std::size_t next_a = 0;
    std::size_t next_b = 0;
    std::size_t cost = 0;
    for (const EditOp& op : script.ops) {
        const bool wants_a = op.kind != EditKind::insert;
        const bool wants_b = op.kind != EditKind::remove;
        if (op.a_index.has_value() != wants_a || op.b_index.has_value() != wants_b) return false;
        if (wants_a && *op.a_index != next_a++) return false;
        if (wants_b && *op.b_index != next_b++) return false;
        if (op.kind != EditKind::match) ++cost;
    }
    return next_a == a_len && next_b == b_len && cost == script.cost;
}

}  // namespace textevo
