#include <algorithm>
#include <cmath>
#include <ostream>

#include "output.hpp"
#include "textevo/cloud.hpp"
#include "textevo/error.hpp"
#include "textevo/exploration.hpp"
#include "textevo/pipeline.hpp"
#include "textevo/rng.hpp"
#include "textevo/stats.hpp"

namespace fs = std::filesystem;

namespace textevo {

namespace {

using cli::fmt;
using cli::json;

struct AuthorSummary {
    std::string id;
    std::size_t n_versions = 0;
    std::optional<double> sw;
    std::vector<double> sw_null;
    std::vector<std::size_t> edit_counts;
    std::optional<ExplorationCurve> curve;
    bool has_trajectory = false;
    double twist = 0.0;
    double exploration_fraction = 0.0;
    double total_edits = 0.0;
    std::vector<double> deltas;  // classifiable steps only
    std::size_t explorations = 0;
};

AuthorSummary parse_summary(const json& j, double band) {
    AuthorSummary a;
    a.id = j.at("author_id").get<std::string>();
    a.n_versions = j.at("n_versions").get<std::size_t>();
    if (j.contains("complexity") && j["complexity"].is_object()) {
        a.sw = j["complexity"].at("sw_index").get<double>();
        a.sw_null = j["complexity"].at("null_distribution").get<std::vector<double>>();
    }
    if (j.contains("edit_counts")) a.edit_counts = j["edit_counts"].get<std::vector<std::size_t>>();
    if (j.contains("exploration") && j["exploration"].is_object()) {
        ExplorationCurve c;
        c.h_values = j["exploration"].at("h").get<std::vector<double>>();
        c.coefficient_e = j["exploration"].at("coefficient_e").get<double>();
        c.d_first_last = j["exploration"].at("d_first_last").get<std::size_t>();
        a.curve = std::move(c);
    }
    if (j.contains("trajectory") && j["trajectory"].is_object()) {
        const json& t = j["trajectory"];
        a.has_trajectory = true;
        a.twist = t.at("twist_ratio").get<double>();
        a.exploration_fraction = t.at("exploration_fraction").get<double>();
        a.total_edits = t.at("total_edits").get<double>();
        for (const auto& b : t.at("betas")) {
            const double beta = cli::number_or_nan(b);
            if (std::isnan(beta)) continue;
            const double delta = 180.0 - beta;
            a.deltas.push_back(delta);
            if (delta >= band && delta <= 180.0 - band) ++a.explorations;
        }
    }
    return a;
}

// Equal-width bins over [lo, hi]; the last bin is closed.
std::vector<std::size_t> histogram(const std::vector<double>& values, double lo, double hi, std::size_t bins) {
    std::vector<std::size_t> counts(bins, 0);
    for (double v : values) {
        if (!(v >= lo && v <= hi)) continue;
        auto k = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
        ++counts[std::min(k, bins - 1)];
    }
    return counts;
}

json correlation_json(const Correlation& c) {
    return {{"r", c.r}, {"p", c.p}, {"n", c.n}};
}

class Aggregator {
public:
    Aggregator(const RunConfig& cfg, const cli::Meta& meta, std::ostream& log)
        : cfg_(cfg), meta_(meta), log_(log), dir_(cfg.out / "aggregate") {}

    int run(const std::vector<AuthorSummary>& authors) {
        fs::create_directories(dir_);
        summary_["n_authors"] = authors.size();
        if (authors.size() < 2) {
            notice("fewer than 2 authors: corpus aggregates skipped");
        } else {
            complexity(authors);
            exploration(authors);
            trajectory(authors);
            profile(authors);
        }
        summary_["notices"] = notices_;
        cli::write_json(dir_ / "aggregate.json", summary_, meta_);
        return notices_.empty() ? exit_ok : exit_partial;
    }

private:
    void notice(const std::string& text) {
        notices_.push_back(text);
        log_ << "notice: " << text << "\n";
    }

    std::uint64_t seed_for(std::string_view what) const { return derive_seed(cfg_.seed, "aggregate", what); }

    std::optional<Correlation> correlate(const char* what, std::span<const double> x, std::span<const double> y) {
        try {
            return pearson(x, y);
        } catch (const Error& e) {
            notice(std::string(what) + ": " + e.what());
            return std::nullopt;
        }
    }

    void complexity(const std::vector<AuthorSummary>& authors) {
        std::vector<double> observed, pooled_null;
        std::string rows;
        for (const auto& a : authors) {
            if (!a.sw) continue;
            observed.push_back(*a.sw);
            pooled_null.insert(pooled_null.end(), a.sw_null.begin(), a.sw_null.end());
            rows += cli::csv_field(a.id) + "," + fmt(*a.sw) + "\n";
        }
        cli::write_csv(dir_ / "complexity_sw.csv", "author_id,sw_index", rows, meta_);
        if (observed.size() < 2) {
            notice("fewer than 2 complexity values: SW histogram skipped");
            return;
        }
        constexpr std::size_t bins = 20;
        const auto obs = histogram(observed, 0.0, 1.0, bins);
        const auto nul = histogram(pooled_null, 0.0, 1.0, bins);
        const double width = 1.0 / bins;
        std::string hrows;
        for (std::size_t k = 0; k < bins; ++k) {
            const double o = static_cast<double>(obs[k]) / (static_cast<double>(observed.size()) * width);
            const double n = pooled_null.empty()
                                 ? 0.0
                                 : static_cast<double>(nul[k]) / (static_cast<double>(pooled_null.size()) * width);
            hrows += fmt(k * width) + "," + fmt((k + 1) * width) + "," + fmt(o) + "," + fmt(n) + "\n";
        }
        cli::write_csv(dir_ / "sw_histogram.csv", "bin_low,bin_high,observed_density,null_density", hrows, meta_);
        summary_["complexity"] = {{"mean_sw", mean(observed)}, {"n", observed.size()}};
    }

    void exploration(const std::vector<AuthorSummary>& authors) {
        std::vector<ExplorationCurve> curves;
        std::vector<double> e, tf;
        std::string rows;
        for (const auto& a : authors) {
            if (!a.curve) continue;
            curves.push_back(*a.curve);
            e.push_back(a.curve->coefficient_e);
            tf.push_back(static_cast<double>(a.curve->n_versions()));
            rows += cli::csv_field(a.id) + "," + fmt(e.back()) + "," + std::to_string(a.curve->n_versions()) + "\n";
        }
        cli::write_csv(dir_ / "exploration_coefficients.csv", "author_id,E,t_f", rows, meta_);
        if (curves.size() < 2) {
            notice("fewer than 2 exploration curves: mean curve and E histogram skipped");
            return;
        }
        const auto band = mean_exploration_curve(curves, 101, cfg_.n_boot, 0.995, seed_for("exploration_mean"));
        std::string brows;
        for (const auto& p : band) brows += fmt(p.x) + "," + fmt(p.mean) + "," + fmt(p.low) + "," + fmt(p.high) + "\n";
        cli::write_csv(dir_ / "exploration_mean.csv", "u,mean_h,ci_low,ci_high", brows, meta_);

        constexpr double width = 0.05;
        const double top = *std::max_element(e.begin(), e.end());
        const auto bins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(top / width - 1e-9)));
        const auto counts = histogram(e, 0.0, static_cast<double>(bins) * width, bins);
        std::string hrows;
        for (std::size_t k = 0; k < bins; ++k) {
            hrows += fmt(k * width) + "," + fmt((k + 1) * width) + "," + std::to_string(counts[k]) + "\n";
        }
        cli::write_csv(dir_ / "e_histogram.csv", "bin_low,bin_high,count", hrows, meta_);

        json ex = {{"mean_e", mean(e)}, {"n", e.size()}};
        if (auto c = correlate("E vs versions", e, tf)) {
            cli::write_json(dir_ / "e_vs_versions.json", {{"x", "E"}, {"y", "t_f"}, {"pearson", correlation_json(*c)}},
                            meta_);
            ex["e_vs_versions"] = correlation_json(*c);
        }
        summary_["exploration"] = ex;
    }

    void trajectory(const std::vector<AuthorSummary>& authors) {
        std::vector<const AuthorSummary*> with;
        for (const auto& a : authors) {
            if (a.has_trajectory) with.push_back(&a);
        }
        std::string rows;
        std::vector<double> twist, fraction, edits, versions;
        std::size_t pooled_explore = 0, pooled_total = 0;
        for (const auto* a : with) {
            rows += cli::csv_field(a->id) + "," + fmt(a->twist) + "," + fmt(a->exploration_fraction) + "," +
                    fmt(a->total_edits) + "," + std::to_string(a->n_versions) + "\n";
            twist.push_back(a->twist);
            fraction.push_back(a->exploration_fraction);
            edits.push_back(a->total_edits);
            versions.push_back(static_cast<double>(a->n_versions));
            pooled_explore += a->explorations;
            pooled_total += a->deltas.size();
        }
        cli::write_csv(dir_ / "twist_ratios.csv", "author_id,twist_ratio,exploration_fraction,total_edits,n_versions",
                       rows, meta_);
        if (with.size() < 2) {
            notice("fewer than 2 trajectories: angle aggregates skipped");
            return;
        }

        constexpr std::size_t tbins = 10;
        const auto tcounts = histogram(twist, 0.0, 1.0, tbins);
        std::string trows;
        for (std::size_t k = 0; k < tbins; ++k) {
            trows += fmt(k * 0.1) + "," + fmt((k + 1) * 0.1) + "," + std::to_string(tcounts[k]) + "\n";
        }
        cli::write_csv(dir_ / "twist_histogram.csv", "bin_low,bin_high,count", trows, meta_);

        // Per-author deviation histograms (share of steps per 10 degree bin),
        // averaged with a bootstrap band over authors.
        constexpr std::size_t dbins = 18;
        std::vector<std::vector<double>> shares;
        for (const auto* a : with) {
            const auto counts = histogram(a->deltas, 0.0, 180.0, dbins);
            std::vector<double> s(dbins);
            for (std::size_t k = 0; k < dbins; ++k) {
                s[k] = static_cast<double>(counts[k]) / static_cast<double>(a->deltas.size());
            }
            shares.push_back(std::move(s));
        }
        std::vector<double> centers(dbins);
        for (std::size_t k = 0; k < dbins; ++k) centers[k] = 10.0 * static_cast<double>(k) + 5.0;
        const auto band = mean_band(shares, centers, 0.995, cfg_.n_boot, seed_for("beta_deviation"));
        std::string drows;
        for (std::size_t k = 0; k < dbins; ++k) {
            drows += fmt(10.0 * k) + "," + fmt(10.0 * (k + 1)) + "," + fmt(band[k].mean) + "," + fmt(band[k].low) +
                     "," + fmt(band[k].high) + "\n";
        }
        cli::write_csv(dir_ / "beta_deviation.csv", "delta_low,delta_high,mean_share,ci_low,ci_high", drows, meta_);

        json tj = {{"mean_twist_ratio", mean(twist)},
                   {"exploration_share",
                    {{"pooled", pooled_total ? static_cast<double>(pooled_explore) / pooled_total : 0.0},
                     {"mean_per_author", mean(fraction)}}},
                   {"n", twist.size()}};
        json out = {{"x", "twist_ratio"}};
        if (auto c = correlate("twist vs total edits", twist, edits)) {
            out["total_edits"] = correlation_json(*c);
            tj["twist_vs_edits"] = correlation_json(*c);
        }
        if (auto c = correlate("twist vs version count", twist, versions)) out["n_versions"] = correlation_json(*c);
        if (out.size() > 1) cli::write_json(dir_ / "twist_vs_edits.json", out, meta_);
        summary_["trajectory"] = tj;
    }

    void profile(const std::vector<AuthorSummary>& authors) {
        std::vector<std::vector<ProfilePoint>> profiles;
        for (const auto& a : authors) {
            if (a.edit_counts.empty()) continue;
            const std::size_t n = a.edit_counts.size();
            std::vector<ProfilePoint> p;
            for (std::size_t c = 0; c < n; ++c) {
                const double pos = n > 1 ? static_cast<double>(c) / static_cast<double>(n - 1) : 0.0;
                p.push_back({pos, static_cast<double>(a.edit_counts[c])});
            }
            profiles.push_back(std::move(p));
        }
        if (profiles.size() < 2) {
            notice("fewer than 2 edit profiles: mean profile skipped");
            return;
        }
        const auto band = mean_profile(profiles, 101, cfg_.n_boot, 0.995, seed_for("edit_profile"));
        std::string rows;
        for (const auto& p : band) rows += fmt(p.x) + "," + fmt(p.mean) + "," + fmt(p.low) + "," + fmt(p.high) + "\n";
        cli::write_csv(dir_ / "edit_profile.csv", "relative_position,mean_edits,ci_low,ci_high", rows, meta_);
    }

    const RunConfig& cfg_;
    const cli::Meta& meta_;
    std::ostream& log_;
    fs::path dir_;
    json summary_;
    std::vector<std::string> notices_;
};

}  // namespace

int run_aggregate(const RunConfig& config, std::ostream& log) {
    const cli::Meta meta = cli::make_meta(config);
    std::vector<AuthorSummary> authors;
    try {
        const json manifest = cli::read_json(config.out / "manifest.json");
        if (manifest.at("meta").at("config_digest") != meta.digest) {
            log << "warning: per-author reports were produced with a different configuration\n";
        }
        for (const auto& entry : manifest.at("authors")) {
            const fs::path file = config.out / "authors" / entry.at("dir").get<std::string>() / "summary.json";
            authors.push_back(parse_summary(cli::read_json(file), config.flow_band_deg));
        }
    } catch (const Error& e) {
        log << "error: " << e.what() << "\n";
        return exit_fatal;
    } catch (const cli::json::exception& e) {
        log << "error: malformed report: " << e.what() << "\n";
        return exit_fatal;
    }
    try {
        return Aggregator(config, meta, log).run(authors);
    } catch (const Error& e) {
        log << "error: " << e.what() << "\n";
        return exit_fatal;
    }
}

}  // namespace textevo
