#include "textevo/synth.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <unordered_set>

#include "textevo/error.hpp"
#include "textevo/rng.hpp"

namespace textevo {

namespace {

// Plain lower-case words. None of them is an abbreviation the sentence
// splitter knows about.
constexpr std::array<std::string_view, 256> kWords = {
    "about",    "above",   "across",  "after",   "again",    "against", "almost",  "alone",   "along",
    "already",  "always",  "among",   "animal",  "answer",   "apple",   "area",    "around",  "autumn",
    "away",     "back",    "basket",  "beach",   "because",  "become",  "before",  "begin",   "behind",
    "below",    "beside",  "between", "beyond",  "bird",     "black",   "blue",    "boat",    "body",
    "book",     "bottle",  "branch",  "bread",   "bridge",   "bright",  "bring",   "brother", "build",
    "busy",     "candle",  "carry",   "castle",  "certain",  "chair",   "change",  "child",   "circle",
    "city",     "clear",   "close",   "cloud",   "coast",    "cold",    "color",   "common",  "corner",
    "country",  "course",  "cover",   "cross",   "dark",     "daughter", "deep",   "desert",  "differ",
    "distant",  "door",    "dream",   "during",  "early",    "earth",   "east",    "easy",    "edge",
    "empty",    "enough",  "evening", "every",   "face",     "family",  "farm",    "fast",    "father",
    "field",    "finger",  "fire",    "first",   "flower",   "follow",  "forest",  "found",   "free",
    "friend",   "front",   "full",    "garden",  "gather",   "gentle",  "glass",   "gold",    "grass",
    "great",    "green",   "ground",  "group",   "grow",     "half",    "hand",    "happy",   "harbor",
    "heart",    "heavy",   "high",    "hill",    "hold",     "home",    "horse",   "house",   "hunter",
    "island",   "journey", "keep",    "kind",    "king",     "kitchen", "lake",    "lamp",    "land",
    "large",    "later",   "laugh",   "learn",   "leave",    "letter",  "light",   "little",  "long",
    "lost",     "loud",    "machine", "market",  "meadow",   "measure", "middle",  "mirror",  "moment",
    "morning",  "mother",  "mountain", "music",  "narrow",   "near",    "never",   "night",   "north",
    "number",   "ocean",   "often",   "old",     "open",     "orange",  "other",   "paper",   "path",
    "people",   "pencil",  "picture", "place",   "plain",    "plant",   "pocket",  "quiet",   "rain",
    "reach",    "ready",   "river",   "road",    "rock",     "round",   "season",  "second",  "secret",
    "shadow",   "sharp",   "shell",   "shore",   "short",    "silent",  "silver",  "simple",  "sister",
    "slow",     "small",   "smile",   "snow",    "soft",     "south",   "spring",  "square",  "stone",
    "storm",    "story",   "strange", "street",  "strong",   "summer",  "sunlight", "sweet",  "table",
    "tall",     "teacher", "thin",    "thought", "through",  "today",   "tower",   "travel",  "tree",
    "under",    "until",   "valley",  "village", "voice",    "wait",    "walk",    "warm",    "watch",
    "water",    "weather", "west",    "white",   "wide",     "wild",    "window",  "winter",  "wise",
    "without",  "wonder",  "wood",    "world",   "yellow",   "young",   "wheel",   "whisper", "wall",
    "tiny",     "sand",    "rope",    "quick",
};

using Words = std::vector<std::string>;

std::string pick_word(Rng& rng) {
    return std::string(kWords[uniform_below(rng, kWords.size())]);
}

Words random_sentence(Rng& rng) {
    const std::size_t n = 5 + uniform_below(rng, 8);
    Words w;
    for (std::size_t k = 0; k < n; ++k) w.push_back(pick_word(rng));
    return w;
}

std::string render_sentence(const Words& words) {
    std::string s;
    for (std::size_t k = 0; k < words.size(); ++k) {
        if (k) s += ' ';
        s += words[k];
    }
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    s += '.';
    return s;
}

// A sentence at least `target` characters long once rendered.
Words sentence_of_length(Rng& rng, std::size_t target) {
    Words w{pick_word(rng)};
    while (render_sentence(w).size() < target) w.push_back(pick_word(rng));
    return w;
}

struct Document {
    std::vector<Words> sentences;
    std::vector<std::size_t> paragraph_sizes;
};

struct Rendered {
    std::string text;
    std::vector<std::size_t> starts;  // sentence start offsets
    std::vector<std::size_t> ends;    // one past each sentence's period
};

Document random_document(Rng& rng, std::size_t n_sentences) {
    Document doc;
    for (std::size_t k = 0; k < n_sentences; ++k) doc.sentences.push_back(random_sentence(rng));
    std::size_t remaining = n_sentences;
    while (remaining > 0) {
        std::size_t size = std::min<std::size_t>(3 + uniform_below(rng, 4), remaining);
        if (remaining - size < 3) size = remaining;
        doc.paragraph_sizes.push_back(size);
        remaining -= size;
    }
    return doc;
}

Rendered render(const Document& doc) {
    Rendered r;
    std::size_t s = 0;
    for (std::size_t p = 0; p < doc.paragraph_sizes.size(); ++p) {
        if (p) r.text += "\n\n";
        for (std::size_t k = 0; k < doc.paragraph_sizes[p]; ++k, ++s) {
            if (k) r.text += ' ';
            r.starts.push_back(r.text.size());
            r.text += render_sentence(doc.sentences[s]);
            r.ends.push_back(r.text.size());
        }
    }
    return r;
}

// Offset of word `w` of sentence `s` in the rendered text.
std::size_t word_offset(const Document& doc, const Rendered& r, std::size_t s, std::size_t w) {
    std::size_t off = r.starts[s];
    for (std::size_t k = 0; k < w; ++k) off += doc.sentences[s][k].size() + 1;
    return off;
}

// `count` distinct values from [lo, hi), ascending (Floyd's algorithm).
std::vector<std::size_t> distinct_sorted(Rng& rng, std::size_t lo, std::size_t hi, std::size_t count) {
    std::unordered_set<std::size_t> chosen;
    const std::size_t range = hi - lo;
    for (std::size_t j = range - count; j < range; ++j) {
        const std::size_t t = uniform_below(rng, j + 1);
        chosen.insert(chosen.count(t) ? j : t);
    }
    std::vector<std::size_t> out;
    for (std::size_t v : chosen) out.push_back(lo + v);
    std::sort(out.begin(), out.end());
    return out;
}

// Splits [0, items) into `groups` contiguous nonempty runs; returns run ends.
std::vector<std::size_t> group_ends(std::size_t items, std::size_t groups) {
    std::vector<std::size_t> ends;
    for (std::size_t g = 1; g <= groups; ++g) ends.push_back(items * g / groups);
    return ends;
}

struct Generated {
    std::vector<std::string> texts;
    TruthLog truth;
};

[[noreturn]] void infeasible(const std::string& what) {
    throw Error(Errc::infeasible, what);
}

// Redraws a step until it yields a text not produced before.
template <class Step>
std::string fresh_text(std::unordered_set<std::string>& seen, Step&& step) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::string text = step();
        if (seen.insert(text).second) return text;
    }
    infeasible("could not produce a new distinct version");
}

Generated gen_append_only(const WriterProfile& prof, Rng& rng) {
    const std::string full = render(random_document(rng, prof.text_scale)).text;
    if (full.size() < prof.n_versions) infeasible("text too short for that many appends");
    auto cuts = distinct_sorted(rng, 1, full.size(), prof.n_versions - 1);
    cuts.push_back(full.size());
    Generated g;
    for (std::size_t t = 0; t < cuts.size(); ++t) {
        g.texts.push_back(full.substr(0, cuts[t]));
        if (t) g.truth.events.push_back({t, "append", std::nullopt, cuts[t - 1], cuts[t] - cuts[t - 1]});
    }
    return g;
}

Generated gen_reviser(const WriterProfile& prof, Rng& rng, bool focal) {
    Document doc = random_document(rng, prof.text_scale);
    std::size_t target = 0;
    if (focal) {
        target = prof.focal_target ? *prof.focal_target : uniform_below(rng, prof.text_scale);
        if (target >= prof.text_scale) infeasible("focal target outside the text");
    }
    Generated g;
    std::unordered_set<std::string> seen;
    g.texts.push_back(render(doc).text);
    seen.insert(g.texts.back());
    for (std::size_t v = 1; v < prof.n_versions; ++v) {
        const Rendered before = render(doc);
        std::size_t s = 0;
        Words old;
        std::string text = fresh_text(seen, [&] {
            if (!old.empty()) doc.sentences[s] = old;
            s = focal ? target : uniform_below(rng, prof.text_scale);
            old = doc.sentences[s];
            Words next = random_sentence(rng);
            while (next == old) next = random_sentence(rng);
            doc.sentences[s] = std::move(next);
            return render(doc).text;
        });
        g.truth.events.push_back(
            {v, "substitute_sentence", s, before.starts[s], render_sentence(doc.sentences[s]).size()});
        g.texts.push_back(std::move(text));
    }
    return g;
}

Generated gen_word_rewriter(const WriterProfile& prof, Rng& rng) {
    if (prof.max_words_per_rewrite == 0) infeasible("max_words_per_rewrite must be positive");
    Document doc = random_document(rng, prof.text_scale);
    Generated g;
    std::unordered_set<std::string> seen;
    g.texts.push_back(render(doc).text);
    seen.insert(g.texts.back());
    for (std::size_t v = 1; v < prof.n_versions; ++v) {
        const Rendered before = render(doc);
        std::size_t s = 0, first = 0, count = 0;
        Words old;
        std::string text = fresh_text(seen, [&] {
            if (!old.empty()) doc.sentences[s] = old;
            s = uniform_below(rng, prof.text_scale);
            old = doc.sentences[s];
            const std::size_t len = old.size();
            count = std::min(len, 1 + static_cast<std::size_t>(uniform_below(rng, prof.max_words_per_rewrite)));
            first = uniform_below(rng, len - count + 1);
            for (std::size_t k = first; k < first + count; ++k) {
                std::string w = pick_word(rng);
                while (w == old[k]) w = pick_word(rng);
                doc.sentences[s][k] = std::move(w);
            }
            return render(doc).text;
        });
        const std::size_t pos = word_offset(doc, before, s, first);
        std::size_t chars = count - 1;
        for (std::size_t k = first; k < first + count; ++k) chars += old[k].size();
        g.truth.events.push_back({v, "rewrite_word", s, pos, chars});
        g.texts.push_back(std::move(text));
    }
    return g;
}

bool is_letter(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// Words that would read as an abbreviation before a period.
bool forms_abbreviation(const std::string& text, std::size_t pos) {
    std::size_t lo = pos, hi = pos + 1;
    while (lo > 0 && is_letter(text[lo - 1])) --lo;
    while (hi < text.size() && is_letter(text[hi])) ++hi;
    std::string word = text.substr(lo, hi - lo);
    for (char& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    static const std::array<std::string_view, 11> risky = {"dr", "mr", "mrs", "prof", "fig", "eq",
                                                           "vs", "al", "e",  "i",    "g"};
    return std::find(risky.begin(), risky.end(), word) != risky.end();
}

Generated gen_char_flipper(const WriterProfile& prof, Rng& rng) {
    std::string text = render(random_document(rng, prof.text_scale)).text;
    std::vector<std::size_t> letters;
    for (std::size_t k = 0; k < text.size(); ++k) {
        if (is_letter(text[k])) letters.push_back(k);
    }
    Generated g;
    std::unordered_set<std::string> seen;
    g.texts.push_back(text);
    seen.insert(text);
    for (std::size_t v = 1; v < prof.n_versions; ++v) {
        std::size_t pos = 0;
        const std::string prev = text;
        text = fresh_text(seen, [&] {
            std::string candidate;
            do {
                candidate = prev;
                pos = letters[uniform_below(rng, letters.size())];
                const char base = std::isupper(static_cast<unsigned char>(prev[pos])) ? 'A' : 'a';
                char c = prev[pos];
                while (c == prev[pos]) c = static_cast<char>(base + uniform_below(rng, 26));
                candidate[pos] = c;
            } while (forms_abbreviation(candidate, pos));
            return candidate;
        });
        g.truth.events.push_back({v, "flip_char", std::nullopt, pos, 1});
        g.texts.push_back(text);
    }
    return g;
}

Generated gen_explorer(const WriterProfile& prof, Rng& rng) {
    const std::size_t n = prof.n_versions;
    if (n < 4) infeasible("explorer needs at least 4 versions");
    if (prof.text_scale < 2) infeasible("explorer needs at least 2 sentences");
    if (!(prof.churn_fraction > 0.0)) infeasible("explorer needs a positive churn fraction");
    const std::size_t steps = n - 1;
    // Body written until `a`, churn added over [a, b], removed over (b, steps].
    std::size_t a = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(0.35 * static_cast<double>(steps))));
    std::size_t b = std::max(a, static_cast<std::size_t>(std::lround(0.5 * static_cast<double>(steps))));
    if (b >= steps) b = steps - 1;
    a = std::min(a, b);
    const std::size_t n_insert = b - a + 1;
    const std::size_t n_delete = steps - b;

    const Document doc = random_document(rng, prof.text_scale);
    const Rendered body = render(doc);
    const std::size_t len_f = body.text.size();
    const std::size_t len_0 = body.ends[0];
    if (len_f - len_0 - 1 < a - 1) infeasible("text too short for the writing phase");
    auto cuts = distinct_sorted(rng, len_0 + 1, len_f, a - 1);
    cuts.insert(cuts.begin(), len_0);
    cuts.push_back(len_f);

    const auto churn_total = static_cast<std::size_t>(std::lround(prof.churn_fraction * static_cast<double>(len_f)));
    const std::size_t pieces = std::max(n_insert, n_delete);
    const std::size_t piece_target = std::max<std::size_t>(2, churn_total / pieces);
    struct Piece {
        std::size_t at;  // offset in the body
        std::size_t id;
        std::string text;
    };
    std::vector<Piece> churn;
    for (std::size_t k = 0; k < pieces; ++k) {
        const std::size_t at = body.ends[uniform_below(rng, body.ends.size())];
        churn.push_back({at, k, " " + render_sentence(sentence_of_length(rng, piece_target - 1))});
    }
    std::vector<std::size_t> order(pieces);
    for (std::size_t k = 0; k < pieces; ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::tie(churn[x].at, x) < std::tie(churn[y].at, y);
    });

    const auto ins_ends = group_ends(pieces, n_insert);
    const auto del_ends = group_ends(pieces, n_delete);

    auto active_at = [&](std::size_t t) {
        std::vector<bool> on(pieces, false);
        if (t < a) return on;
        if (t <= b) {
            for (std::size_t k = 0; k < ins_ends[t - a]; ++k) on[k] = true;
        } else {
            for (std::size_t k = del_ends[t - b - 1]; k < pieces; ++k) on[k] = true;
        }
        return on;
    };
    // Text with the active pieces spliced in, plus the offset each piece
    // (active or not) would occupy.
    auto compose = [&](std::size_t body_len, const std::vector<bool>& on, std::vector<std::size_t>* offsets) {
        std::string out;
        std::size_t copied = 0;
        if (offsets) offsets->assign(pieces, 0);
        for (std::size_t k : order) {
            if (churn[k].at > body_len) break;
            out.append(body.text, copied, churn[k].at - copied);
            copied = churn[k].at;
            if (offsets) (*offsets)[k] = out.size();
            if (on[k]) out += churn[k].text;
        }
        out.append(body.text, copied, body_len - copied);
        return out;
    };

    Generated g;
    std::vector<bool> prev_on(pieces, false);
    for (std::size_t t = 0; t <= steps; ++t) {
        const std::size_t body_len = t < a ? cuts[t] : len_f;
        const auto on = active_at(t);
        g.texts.push_back(compose(body_len, on, nullptr));
        std::size_t churn_len = 0;
        for (std::size_t k = 0; k < pieces; ++k) {
            if (on[k]) churn_len += churn[k].text.size();
        }
        g.truth.length.push_back(g.texts.back().size());
        g.truth.churn_chars.push_back(churn_len);
        g.truth.body_chars.push_back(body_len);
        if (t == 0) continue;
        const std::size_t prev_body = t - 1 < a ? cuts[t - 1] : len_f;
        if (body_len > prev_body) g.truth.events.push_back({t, "append", std::nullopt, prev_body, body_len - prev_body});
        std::vector<std::size_t> offsets;
        compose(prev_body, prev_on, &offsets);
        for (std::size_t k : order) {
            if (on[k] == prev_on[k]) continue;
            g.truth.events.push_back({t, on[k] ? "insert_churn" : "remove_churn", std::nullopt, offsets[k],
                                      churn[k].text.size()});
        }
        prev_on = on;
    }
    return g;
}

Generated generate(const WriterProfile& prof, Rng& rng) {
    switch (prof.kind) {
    case WriterKind::append_only: return gen_append_only(prof, rng);
    case WriterKind::focal_reviser: return gen_reviser(prof, rng, true);
    case WriterKind::uniform_reviser: return gen_reviser(prof, rng, false);
    case WriterKind::explorer: return gen_explorer(prof, rng);
    case WriterKind::word_rewriter: return gen_word_rewriter(prof, rng);
    case WriterKind::char_flipper: return gen_char_flipper(prof, rng);
    }
    infeasible("unknown writer kind");
}

bool pairwise_distinct(const std::vector<std::string>& texts) {
    std::unordered_set<std::string_view> seen;
    for (const auto& t : texts) {
        if (!seen.insert(t).second) return false;
    }
    return true;
}

}  // namespace

const char* to_string(WriterKind kind) {
    switch (kind) {
    case WriterKind::append_only: return "append_only";
    case WriterKind::focal_reviser: return "focal_reviser";
    case WriterKind::uniform_reviser: return "uniform_reviser";
    case WriterKind::explorer: return "explorer";
    case WriterKind::word_rewriter: return "word_rewriter";
    case WriterKind::char_flipper: return "char_flipper";
    }
    return "?";
}

WriterKind parse_writer_kind(std::string_view name) {
    for (WriterKind k : kAllWriterKinds) {
        if (name == to_string(k)) return k;
    }
    throw Error(Errc::invalid_argument, "unknown writer kind: " + std::string(name));
}

std::span<const std::string_view> wordlist() {
    return kWords;
}

SimulatedHistory simulate(const WriterProfile& profile, std::string author_id) {
    if (profile.n_versions < 2) infeasible("n_versions must be at least 2");
    if (profile.text_scale < 1) infeasible("text_scale must be at least 1");
    for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
        Rng rng(attempt == 0 ? profile.seed : derive_seed(profile.seed, "synth-retry", std::to_string(attempt)));
        Generated g = generate(profile, rng);
        if (!pairwise_distinct(g.texts)) continue;
        if (g.truth.length.empty()) {
            for (const auto& t : g.texts) g.truth.length.push_back(t.size());
        }
        SimulatedHistory sim{make_history(std::move(author_id), g.texts), std::move(g.truth)};
        sim.history.source_meta["synth.kind"] = to_string(profile.kind);
        sim.history.source_meta["synth.seed"] = std::to_string(profile.seed);
        return sim;
    }
    infeasible("could not generate pairwise distinct versions");
}

double planted_exploration_bound(const TruthLog& truth) {
    if (truth.churn_chars.empty() || truth.length.size() < 2) return 0.0;
    const double len_f = static_cast<double>(truth.length.back());
    const double d0f = len_f - static_cast<double>(truth.length.front());
    if (d0f <= 0.0) return 0.0;
    double best = 0.0;
    for (std::size_t t = 0; t < truth.churn_chars.size(); ++t) {
        const double missing = len_f - static_cast<double>(truth.body_chars[t]);
        const double excess = static_cast<double>(truth.churn_chars[t]) - missing;
        best = std::max(best, 2.0 * std::max(0.0, excess) / d0f);
    }
    return best;
}

std::string truth_json(const TruthLog& truth, const WriterProfile& profile) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(profile.kind);
    j["seed"] = profile.seed;
    j["n_versions"] = profile.n_versions;
    j["text_scale"] = profile.text_scale;
    if (profile.kind == WriterKind::explorer) j["churn_fraction"] = profile.churn_fraction;
    if (profile.focal_target) j["focal_target"] = *profile.focal_target;
    if (profile.kind == WriterKind::word_rewriter) j["max_words_per_rewrite"] = profile.max_words_per_rewrite;
    auto events = nlohmann::ordered_json::array();
    for (const auto& e : truth.events) {
        nlohmann::ordered_json ev;
        ev["version"] = e.version;
        ev["kind"] = e.kind;
        if (e.sentence) ev["sentence"] = *e.sentence;
        if (e.position) ev["position"] = *e.position;
        ev["chars"] = e.chars;
        events.push_back(std::move(ev));
    }
    j["events"] = std::move(events);
    j["length"] = truth.length;
    if (!truth.churn_chars.empty()) {
        j["churn_chars"] = truth.churn_chars;
        j["body_chars"] = truth.body_chars;
        j["planted_bound"] = planted_exploration_bound(truth);
    }
    return j.dump(2) + "\n";
}

void write_snapshot_directory(const SimulatedHistory& sim, const WriterProfile& profile,
                              const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const std::size_t n = sim.history.size();
    const std::size_t width = std::max<std::size_t>(3, std::to_string(n > 0 ? n - 1 : 0).size());
    auto write = [](const std::filesystem::path& path, const std::string& data) {
        std::ofstream out(path, std::ios::binary);
        out << data;
        if (!out) throw Error(Errc::unreadable_source, "cannot write " + path.string());
    };
    for (std::size_t i = 0; i < n; ++i) {
        std::string name = std::to_string(i);
        name.insert(0, width - name.size(), '0');
        write(dir / (name + ".txt"), sim.history.text(i));
    }
    write(dir / "truth.json", truth_json(sim.truth, profile));
}

}  // namespace textevo
