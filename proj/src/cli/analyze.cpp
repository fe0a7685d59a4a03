#include <algorithm>
#include <cmath>
#include <map>
#include <omp.h>
#include <ostream>

#include "output.hpp"
#include "textevo/cloud.hpp"
#include "textevo/complexity.hpp"
#include "textevo/corpus.hpp"
#include "textevo/error.hpp"
#include "textevo/exploration.hpp"
#include "textevo/granularity.hpp"
#include "textevo/pipeline.hpp"
#include "textevo/rng.hpp"
#include "textevo/trajectory.hpp"

namespace fs = std::filesystem;

namespace textevo {

namespace {

using cli::fmt;
using cli::json;

struct AuthorOutcome {
    std::string author_id;
    std::string dir;
    std::vector<std::string> log;
    bool partial = false;
};

class AuthorAnalysis {
public:
    AuthorAnalysis(const VersionHistory& history, const RunConfig& config, const cli::Meta& meta, fs::path dir)
        : h_(history), cfg_(config), meta_(meta), dir_(std::move(dir)) {}

    AuthorOutcome run(std::string dir_name) {
        fs::create_directories(dir_);
        summary_["author_id"] = h_.author_id;
        summary_["n_versions"] = h_.size();
        stage("granularity", [&] { granularity(); });
        summary_["level"] = to_string(level_);
        stage("cloud", [&] { cloud(); });
        stage("exploration", [&] { exploration(); });
        stage("trajectory", [&] { trajectory(); });
        summary_["errors"] = errors_;
        cli::write_json(dir_ / "summary.json", summary_, meta_);
        outcome_.author_id = h_.author_id;
        outcome_.dir = std::move(dir_name);
        outcome_.partial = !errors_.empty();
        return outcome_;
    }

private:
    bool wants(const char* format) const { return cfg_.formats.count(format) > 0; }

    std::uint64_t seed_for(std::string_view op) const { return derive_seed(cfg_.seed, op, h_.author_id); }

    template <class F>
    void stage(const char* name, F&& body) {
        try {
            body();
        } catch (const Error& e) {
            errors_.push_back({{"stage", name}, {"code", to_string(e.code())}, {"message", e.what()}});
            outcome_.log.push_back(h_.author_id + ": " + name + " skipped: " + e.what());
            summary_[name] = nullptr;
        }
    }

    void granularity() {
        const auto seed = seed_for("granularity");
        const GranularityReport rep = select_granularity(h_, kAllGranularities, cfg_.n_shuffles, seed);
        level_ = cfg_.granularity.value_or(rep.selected);
        json dist = json::object();
        for (auto [lvl, d] : rep.distances) dist[to_string(lvl)] = std::isfinite(d) ? json(d) : json(nullptr);
        json skipped = json::array();
        for (auto lvl : rep.skipped) skipped.push_back(to_string(lvl));
        json j;
        j["distances"] = dist;
        j["skipped"] = skipped;
        j["selected"] = to_string(rep.selected);
        j["used"] = to_string(level_);
        j["override"] = cfg_.granularity.has_value();
        j["seed"] = seed;
        j["n_shuffles"] = rep.n_shuffles;
        summary_["granularity"] = j;
        if (wants("json")) cli::write_json(dir_ / "granularity.json", j, meta_);
    }

    void cloud() {
        const WritingCloud c = build_cloud(h_, level_);
        summary_["edit_counts"] = c.edit_counts;
        if (wants("csv")) {
            const std::string csv = cloud_csv(c);
            cli::write_csv(dir_ / "cloud.csv", "version,column,birth_version", csv.substr(csv.find('\n') + 1), meta_);
            std::string rows;
            for (const auto& p : edit_profile(c)) rows += fmt(p.position) + "," + fmt(p.edits) + "\n";
            cli::write_csv(dir_ / "profile.csv", "relative_position,edits", rows, meta_);
        }
        if (wants("svg")) cli::write_text(dir_ / "cloud.svg", cloud_svg(c, meta_.line()));

        const auto seed = seed_for("complexity");
        const ComplexityReport rep = complexity_report(c, cfg_.n_shuffles, seed);
        json j;
        j["sw_index"] = rep.sw_index;
        j["raw_entropy"] = rep.raw_entropy;
        j["n_columns"] = rep.n_columns;
        j["total_edits"] = rep.total_edits;
        j["null_percentile"] = rep.null_percentile;
        j["seed"] = rep.seed;
        j["null_distribution"] = rep.null_distribution;
        summary_["complexity"] = j;
        if (wants("json")) cli::write_json(dir_ / "complexity.json", j, meta_);
    }

    void exploration() {
        const ExplorationCurve c = exploration_curve(h_);
        const double tf = static_cast<double>(c.n_versions() - 1);
        if (wants("csv")) {
            std::string rows;
            for (std::size_t t = 0; t < c.n_versions(); ++t) {
                rows += std::to_string(t) + "," + fmt(static_cast<double>(t) / tf) + "," + fmt(c.h_values[t]) + "\n";
            }
            cli::write_csv(dir_ / "exploration.csv", "t,u,h", rows, meta_);
        }
        json j;
        j["coefficient_e"] = c.coefficient_e;
        j["d_first_last"] = c.d_first_last;
        j["n_versions"] = c.n_versions();
        j["h"] = c.h_values;
        j["d_first"] = c.d_first;
        j["d_last"] = c.d_last;
        summary_["exploration"] = j;
        if (wants("json")) cli::write_json(dir_ / "exploration.json", j, meta_);
    }

    void trajectory() {
        const DistanceMatrix dm = distance_matrix(h_, Granularity::character);
        const auto seed = seed_for("tsne");
        AngleSeries series;
        std::optional<TrajectoryEmbedding> emb;
        if (cfg_.angle_method == AngleMethod::embedded) {
            emb = tsne_embed(dm, {}, seed);
            series = angles(*emb);
        } else {
            series = angles(dm);
        }
        series = classify_and_twist(std::move(series), cfg_.flow_band_deg);

        if (wants("csv")) {
            std::string rows;
            for (std::size_t k = 0; k < series.betas.size(); ++k) {
                const double beta = series.betas[k];
                rows += std::to_string(k + 1) + "," + fmt(beta) + "," + fmt(180.0 - beta) + "," +
                        to_string(series.labels[k]) + "\n";
            }
            cli::write_csv(dir_ / "trajectory.csv", "version,beta_deg,delta_deg,label", rows, meta_);
            if (emb) {
                std::string erows;
                for (std::size_t i = 0; i < emb->n; ++i) {
                    erows += std::to_string(i);
                    for (double v : emb->row(i)) erows += "," + fmt(v);
                    erows += "\n";
                }
                cli::write_csv(dir_ / "embedding.csv", "version,x,y,z", erows, meta_);
            }
        }
        json j;
        j["twist_ratio"] = series.twist_ratio;
        j["exploration_fraction"] = series.exploration_fraction;
        j["method"] = to_string(series.method);
        j["band_deg"] = series.band_deg;
        j["seed"] = emb ? seed : cfg_.seed;
        j["total_edits"] = total_edits(dm);
        j["n_versions"] = dm.size();
        j["mds_variance_3"] = dm.size() >= 4 ? json(mds_check(dm)) : json(nullptr);
        if (emb) {
            j["kl_final"] = emb->kl_final;
            j["perplexity"] = emb->perplexity;
        }
        json betas = json::array();
        for (double b : series.betas) betas.push_back(std::isnan(b) ? json(nullptr) : json(b));
        j["betas"] = betas;
        summary_["trajectory"] = j;
        if (wants("json")) cli::write_json(dir_ / "trajectory.json", j, meta_);
    }

    static double mds_check(const DistanceMatrix& dm) {
        try {
            return mds_variance_check(dm, 3);
        } catch (const Error&) {
            return std::nan("");
        }
    }

    const VersionHistory& h_;
    const RunConfig& cfg_;
    const cli::Meta& meta_;
    fs::path dir_;
    Granularity level_ = Granularity::sentence;
    json summary_;
    json errors_ = json::array();
    AuthorOutcome outcome_;
};

}  // namespace

int run_analyze(const RunConfig& config, std::ostream& log) {
    const cli::Meta meta = cli::make_meta(config);
    Corpus corpus;
    try {
        if (config.inputs.empty()) throw Error(Errc::invalid_argument, "no --input given");
        corpus = load_corpus(config.inputs, config.min_changes);
    } catch (const Error& e) {
        log << "error: " << e.what() << "\n";
        return exit_fatal;
    }
    for (const auto& f : corpus.filter_log) log << "filtered " << f.author_id << ": " << f.reason << "\n";
    if (corpus.histories.empty()) {
        log << "error: no history passed the filters\n";
        return exit_fatal;
    }

    const fs::path authors_dir = config.out / "authors";
    fs::create_directories(authors_dir);
    // Directory names are assigned up front so they do not depend on scheduling.
    std::vector<std::string> names;
    std::map<std::string, int> used;
    for (const auto& h : corpus.histories) {
        std::string name = cli::safe_name(h.author_id);
        if (used[name]++ > 0) name += "_" + std::to_string(used[name] - 1);
        names.push_back(name);
    }

    const auto n = static_cast<std::int64_t>(corpus.histories.size());
    std::vector<AuthorOutcome> outcomes(corpus.histories.size());
    const int threads = config.jobs == 0 ? omp_get_max_threads() : static_cast<int>(config.jobs);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t k = 0; k < n; ++k) {
        const auto& h = corpus.histories[k];
        try {
            AuthorAnalysis job(h, config, meta, authors_dir / names[k]);
            outcomes[k] = job.run(names[k]);
        } catch (const std::exception& e) {
            outcomes[k].author_id = h.author_id;
            outcomes[k].dir = names[k];
            outcomes[k].partial = true;
            outcomes[k].log.push_back(h.author_id + ": failed: " + e.what());
        }
    }

    json manifest;
    json authors = json::array();
    bool partial = false;
    for (const auto& o : outcomes) {
        for (const auto& line : o.log) log << line << "\n";
        authors.push_back({{"author_id", o.author_id}, {"dir", o.dir}, {"complete", !o.partial}});
        partial = partial || o.partial;
    }
    json filtered = json::array();
    for (const auto& f : corpus.filter_log) filtered.push_back({{"author_id", f.author_id}, {"reason", f.reason}});
    manifest["authors"] = authors;
    manifest["filtered"] = filtered;
    cli::write_json(config.out / "manifest.json", manifest, meta);
    log << "analyzed " << outcomes.size() << " author(s)" << (partial ? " with partial failures" : "") << "\n";
    return partial ? exit_partial : exit_ok;
}

int run_all(const RunConfig& config, std::ostream& log) {
    const int a = run_analyze(config, log);
    if (a == exit_fatal) return a;
    const int b = run_aggregate(config, log);
    return std::max(a, b);
}

}  // namespace textevo
