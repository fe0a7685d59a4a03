#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "textevo/kernels.hpp"

namespace textevo::kernels {

namespace {

using Word = std::uint64_t;
constexpr std::size_t kWordBits = 64;

// Match masks of the pattern: for every distinct pattern symbol, one bit per
// pattern position, split over `words` machine words.
class PatternMasks {
public:
    explicit PatternMasks(SymbolView pattern) : words_((pattern.size() + kWordBits - 1) / kWordBits) {
        small_.fill(-1);
        for (std::size_t i = 0; i < pattern.size(); ++i) {
            const std::size_t slot = slot_for(pattern[i]);
            masks_[slot * words_ + i / kWordBits] |= Word{1} << (i % kWordBits);
        }
    }

    std::size_t words() const noexcept { return words_; }

    /// Masks for `symbol`, or nullptr when it never occurs in the pattern.
    const Word* find(char32_t symbol) const {
        if (symbol < small_.size()) {
            const int s = small_[symbol];
            return s < 0 ? nullptr : masks_.data() + static_cast<std::size_t>(s) * words_;
        }
        auto it = large_.find(symbol);
        return it == large_.end() ? nullptr : masks_.data() + it->second * words_;
    }

private:
    std::size_t slot_for(char32_t symbol) {
        if (symbol < small_.size()) {
            if (small_[symbol] < 0) {
                small_[symbol] = static_cast<int>(next_);
                grow();
            }
            return static_cast<std::size_t>(small_[symbol]);
        }
        auto [it, inserted] = large_.try_emplace(symbol, next_);
        if (inserted) grow();
        return it->second;
    }

    void grow() {
        ++next_;
        masks_.resize(next_ * words_, 0);
    }

    std::size_t words_;
    std::size_t next_ = 0;
    std::array<int, 256> small_{};
    std::unordered_map<char32_t, std::size_t> large_;
    std::vector<Word> masks_;
};

// One 64-row block of one column. `hin` is the horizontal delta entering at
// the top of the block; returns the delta leaving at its bottom row. `ph_out`
// and `mh_out` receive the unshifted horizontal delta vectors.
inline int advance_block(Word& pv, Word& mv, Word eq, int hin, Word& ph_out, Word& mh_out) {
    const Word hin_neg = hin < 0 ? 1 : 0;
    const Word xv = eq | mv;
    eq |= hin_neg;
    const Word xh = (((eq & pv) + pv) ^ pv) | eq;
    Word ph = mv | ~(xh | pv);
    Word mh = pv & xh;
    ph_out = ph;
    mh_out = mh;
    const int hout = static_cast<int>(ph >> (kWordBits - 1)) - static_cast<int>(mh >> (kWordBits - 1));
    ph <<= 1;
    mh <<= 1;
    mh |= hin_neg;
    ph |= hin > 0 ? 1 : 0;
    pv = mh | ~(xv | ph);
    mv = ph & xv;
    return hout;
}

// Runs the column recurrence of `text` against `pattern`. When `store` is
// non-null the vertical delta vectors of every column are appended to it
// (Pv words then Mv words). Returns the distance.
std::size_t run_columns(SymbolView pattern, SymbolView text, std::vector<Word>* store) {
    const std::size_t m = pattern.size();
    if (m == 0) return text.size();
    const PatternMasks peq(pattern);
    const std::size_t w = peq.words();
    std::vector<Word> pv(w, ~Word{0});
    std::vector<Word> mv(w, 0);
    const std::size_t last_bit = (m - 1) % kWordBits;
    std::size_t score = m;
    if (store) store->reserve(store->size() + text.size() * 2 * w);

    for (char32_t c : text) {
        const Word* eq = peq.find(c);
        int hin = 1;
        Word ph = 0;
        Word mh = 0;
        for (std::size_t k = 0; k < w; ++k) {
            hin = advance_block(pv[k], mv[k], eq ? eq[k] : 0, hin, ph, mh);
        }
        score += (ph >> last_bit) & 1;
        score -= (mh >> last_bit) & 1;
        if (store) {
            store->insert(store->end(), pv.begin(), pv.end());
            store->insert(store->end(), mv.begin(), mv.end());
        }
    }
    return score;
}

std::size_t common_suffix(SymbolView a, SymbolView b) {
    std::size_t s = 0;
    const std::size_t limit = std::min(a.size(), b.size());
    while (s < limit && a[a.size() - 1 - s] == b[b.size() - 1 - s]) ++s;
    return s;
}

EditScript finish(std::vector<EditOp>& reversed) {
    EditScript script;
    script.ops.assign(reversed.rbegin(), reversed.rend());
    for (const EditOp& op : script.ops) {
        if (op.kind != EditKind::match) ++script.cost;
    }
    return script;
}

// Shared backtrace. `value(i, j)` returns D[i][j].
template <class Value>
EditScript backtrace(SymbolView a, SymbolView b, Value&& value) {
    std::vector<EditOp> rev;
    rev.reserve(a.size() + b.size());
    std::size_t i = a.size();
    std::size_t j = b.size();
    std::size_t d = value(i, j);
    while (i > 0 || j > 0) {
        if (i > 0 && j > 0) {
            const std::size_t diag = value(i - 1, j - 1);
            if (a[i - 1] == b[j - 1] && diag == d) {
                rev.push_back({EditKind::match, i - 1, j - 1});
                --i, --j, d = diag;
                continue;
            }
            if (diag + 1 == d) {
                rev.push_back({EditKind::substitute, i - 1, j - 1});
                --i, --j, d = diag;
                continue;
            }
        }
        if (i > 0) {
            const std::size_t up = value(i - 1, j);
            if (up + 1 == d) {
                rev.push_back({EditKind::remove, i - 1, std::nullopt});
                --i, d = up;
                continue;
            }
        }
        rev.push_back({EditKind::insert, std::nullopt, j - 1});
        --j;
        d = value(i, j);
    }
    return finish(rev);
}

}  // namespace

std::size_t levenshtein_reference(SymbolView a, SymbolView b) {
    std::vector<std::size_t> prev(b.size() + 1);
    std::vector<std::size_t> cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::size_t levenshtein_bitparallel(SymbolView a, SymbolView b) {
    // Symmetric, so the shorter sequence is the (bit-packed) pattern.
    if (a.size() > b.size()) std::swap(a, b);
    return run_columns(a, b, nullptr);
}

EditScript alignment_reference(SymbolView a, SymbolView b) {
    const std::size_t cols = b.size() + 1;
    std::vector<std::uint32_t> dp((a.size() + 1) * cols);
    for (std::size_t j = 0; j < cols; ++j) dp[j] = static_cast<std::uint32_t>(j);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        dp[i * cols] = static_cast<std::uint32_t>(i);
        for (std::size_t j = 1; j < cols; ++j) {
            const std::uint32_t sub = dp[(i - 1) * cols + j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            dp[i * cols + j] = std::min({sub, dp[(i - 1) * cols + j] + 1, dp[i * cols + j - 1] + 1});
        }
    }
    return backtrace(a, b, [&](std::size_t i, std::size_t j) -> std::size_t { return dp[i * cols + j]; });
}

EditScript alignment_bitparallel(SymbolView a, SymbolView b) {
    // The backtrace always matches a shared suffix (D[n][m] = D[n-1][m-1]
    // whenever the last symbols agree), so peeling it is exact. A shared
    // prefix is not: the tie-break may leave the diagonal before reaching it.
    const std::size_t s = common_suffix(a, b);
    const SymbolView ca = a.substr(0, a.size() - s);
    const SymbolView cb = b.substr(0, b.size() - s);

    EditScript core;
    if (ca.empty() || cb.empty()) {
        // One side is empty, so D[i][j] = i + j along the only reachable edge.
        core = backtrace(ca, cb, [](std::size_t i, std::size_t j) { return i + j; });
    } else {
        std::vector<Word> store;
        run_columns(ca, cb, &store);
        const std::size_t w = (ca.size() + kWordBits - 1) / kWordBits;
        auto value = [&](std::size_t i, std::size_t j) -> std::size_t {
            if (j == 0) return i;
            const Word* pv = store.data() + (j - 1) * 2 * w;
            const Word* mv = pv + w;
            std::size_t plus = 0;
            std::size_t minus = 0;
            const std::size_t full = i / kWordBits;
            for (std::size_t k = 0; k < full; ++k) {
                plus += static_cast<std::size_t>(std::popcount(pv[k]));
                minus += static_cast<std::size_t>(std::popcount(mv[k]));
            }
            if (const std::size_t rem = i % kWordBits) {
                const Word mask = (Word{1} << rem) - 1;
                plus += static_cast<std::size_t>(std::popcount(pv[full] & mask));
                minus += static_cast<std::size_t>(std::popcount(mv[full] & mask));
            }
            return j + plus - minus;
        };
        core = backtrace(ca, cb, value);
    }
    for (std::size_t k = 0; k < s; ++k) {
        core.ops.push_back({EditKind::match, ca.size() + k, cb.size() + k});
    }
    return core;
}

}  // namespace textevo::kernels
