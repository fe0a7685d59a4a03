#include <cstdio>
#include <ostream>

#include "output.hpp"
#include "textevo/error.hpp"
#include "textevo/pipeline.hpp"
#include "textevo/rng.hpp"

namespace textevo {

int run_simulate(const SimulateConfig& config, std::ostream& log) {
    if (config.kinds.empty() || config.authors == 0) {
        log << "error: nothing to simulate\n";
        return exit_fatal;
    }
    try {
        std::filesystem::create_directories(config.out);
        cli::json authors = cli::json::array();
        for (std::size_t k = 0; k < config.authors; ++k) {
            const WriterKind kind = config.kinds[k % config.kinds.size()];
            char id[64];
            std::snprintf(id, sizeof id, "%s_%03zu", to_string(kind), k);
            WriterProfile profile;
            profile.kind = kind;
            profile.n_versions = config.n_versions;
            if (config.n_versions_max && *config.n_versions_max > config.n_versions) {
                Rng rng(derive_seed(config.seed, "simulate-versions", id));
                profile.n_versions += uniform_below(rng, *config.n_versions_max - config.n_versions + 1);
            }
            profile.text_scale = config.text_scale;
            profile.churn_fraction = config.churn_fraction;
            profile.seed = derive_seed(config.seed, "simulate", id);
            const SimulatedHistory sim = simulate(profile, id);
            write_snapshot_directory(sim, profile, config.out / id);
            authors.push_back({{"author_id", id},
                               {"kind", to_string(kind)},
                               {"n_versions", profile.n_versions},
                               {"seed", profile.seed}});
        }
        cli::json meta = {{"tool", kToolName}, {"version", kToolVersion}, {"seed", config.seed}};
        cli::json j = {{"meta", meta},
                       {"text_scale", config.text_scale},
                       {"churn_fraction", config.churn_fraction},
                       {"authors", authors}};
        cli::write_text(config.out / "simulation.json", j.dump(2) + "\n");
    } catch (const Error& e) {
        log << "error: " << e.what() << "\n";
        return exit_fatal;
    }
    log << "simulated " << config.authors << " author(s) into " << config.out.string() << "\n";
    return exit_ok;
}

}  // namespace textevo
