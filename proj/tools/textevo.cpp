#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "textevo/error.hpp"
#include "textevo/pipeline.hpp"

namespace {

using namespace textevo;

struct Options {
    RunConfig run;
    std::string granularity = "auto";
    std::string angle_method = "local";
    std::vector<std::string> formats;
};

void add_run_options(CLI::App& cmd, Options& o, bool needs_input) {
    auto* input = cmd.add_option("--input,-i", o.run.inputs, "Snapshot directory, record file or archive (repeatable)");
    if (needs_input) input->required();
    cmd.add_option("--out,-o", o.run.out, "Output directory")->capture_default_str();
    cmd.add_option("--seed", o.run.seed, "Root seed")->capture_default_str();
    cmd.add_option("--jobs,-j", o.run.jobs, "Authors processed concurrently (0: all cores)")->capture_default_str();
    cmd.add_option("--granularity", o.granularity, "auto, char, word, sentence or paragraph")
        ->check(CLI::IsMember({"auto", "char", "character", "word", "sentence", "paragraph"}))
        ->capture_default_str();
    cmd.add_option("--min-changes", o.run.min_changes, "Minimum versions beyond the first")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--n-boot", o.run.n_boot, "Bootstrap resamples")->check(CLI::PositiveNumber)->capture_default_str();
    cmd.add_option("--n-shuffles", o.run.n_shuffles, "Shuffles for the granularity and complexity nulls")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--flow-band-deg", o.run.flow_band_deg, "Deviation band counted as flow")
        ->check(CLI::Range(0.0, 90.0))
        ->capture_default_str();
    cmd.add_option("--angle-method", o.angle_method, "local or tsne")
        ->check(CLI::IsMember({"local", "tsne"}))
        ->capture_default_str();
    cmd.add_option("--format", o.formats, "Output formats: json, csv, svg (default all)")
        ->delimiter(',')
        ->check(CLI::IsMember({"json", "csv", "svg"}));
}

void finish(Options& o) {
    if (o.granularity != "auto") o.run.granularity = parse_granularity(o.granularity);
    o.run.angle_method = parse_angle_method(o.angle_method);
    if (!o.formats.empty()) o.run.formats = {o.formats.begin(), o.formats.end()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Writing-process analytics over text version histories"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    Options analyze, aggregate, all;
    auto* c_analyze = app.add_subcommand("analyze", "Per-author reports");
    add_run_options(*c_analyze, analyze, true);
    auto* c_aggregate = app.add_subcommand("aggregate", "Corpus-level files from per-author reports");
    add_run_options(*c_aggregate, aggregate, false);
    auto* c_run = app.add_subcommand("run", "analyze followed by aggregate");
    add_run_options(*c_run, all, true);

    SimulateConfig sim;
    std::vector<std::string> kinds;
    auto* c_sim = app.add_subcommand("simulate", "Write a synthetic corpus");
    c_sim->add_option("--out,-o", sim.out, "Output directory")->capture_default_str();
    c_sim->add_option("--seed", sim.seed, "Root seed")->capture_default_str();
    c_sim->add_option("--authors", sim.authors, "Number of authors")->capture_default_str();
    c_sim->add_option("--kinds", kinds, "Writer kinds, assigned round-robin (default all)")->delimiter(',');
    c_sim->add_option("--n-versions", sim.n_versions, "Versions per author")->capture_default_str();
    c_sim->add_option("--n-versions-max", sim.n_versions_max, "Draw each author's count from [n-versions, this]");
    c_sim->add_option("--text-scale", sim.text_scale, "Sentences in the final draft")->capture_default_str();
    c_sim->add_option("--churn-fraction", sim.churn_fraction, "Explorer churn over final length")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_fatal;
    }

    try {
        if (*c_analyze) {
            finish(analyze);
            return run_analyze(analyze.run, std::cerr);
        }
        if (*c_aggregate) {
            finish(aggregate);
            return run_aggregate(aggregate.run, std::cerr);
        }
        if (*c_run) {
            finish(all);
            return run_all(all.run, std::cerr);
        }
        if (!kinds.empty()) {
            sim.kinds.clear();
            for (const auto& k : kinds) sim.kinds.push_back(parse_writer_kind(k));
        }
        return run_simulate(sim, std::cerr);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_fatal;
    }
}
