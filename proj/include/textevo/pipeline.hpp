#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "textevo/segment.hpp"
#include "textevo/synth.hpp"
#include "textevo/trajectory.hpp"

namespace textevo {

inline constexpr const char* kToolName = "textevo";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 20240229;

enum ExitCode : int { exit_ok = 0, exit_fatal = 1, exit_partial = 2 };

struct RunConfig {
    std::vector<std::filesystem::path> inputs;
    std::filesystem::path out = "textevo-out";
    std::uint64_t seed = kDefaultSeed;
    std::size_t jobs = 1;
    std::optional<Granularity> granularity;  // empty: select automatically
    std::size_t min_changes = 10;
    std::size_t n_boot = 1000;
    std::size_t n_shuffles = 1000;  // granularity null and complexity null
    double flow_band_deg = 30.0;
    AngleMethod angle_method = AngleMethod::local_metric;
    std::set<std::string> formats = {"json", "csv", "svg"};
};

/// Hex FNV-1a over every setting that can change an output value. Paths and
/// the job count are excluded.
std::string config_digest(const RunConfig& config);

/// Per-author reports under <out>/authors/<id>/ plus <out>/manifest.json.
int run_analyze(const RunConfig& config, std::ostream& log);

/// Corpus-level files under <out>/aggregate/, read from what run_analyze wrote.
int run_aggregate(const RunConfig& config, std::ostream& log);

/// run_analyze followed by run_aggregate.
int run_all(const RunConfig& config, std::ostream& log);

struct SimulateConfig {
    std::filesystem::path out = "textevo-corpus";
    std::uint64_t seed = kDefaultSeed;
    std::vector<WriterKind> kinds = {std::begin(kAllWriterKinds), std::end(kAllWriterKinds)};
    std::size_t authors = 12;
    std::size_t n_versions = 20;
    std::optional<std::size_t> n_versions_max;  // per-author count drawn from [n_versions, max]
    std::size_t text_scale = 10;
    double churn_fraction = 0.4;
};

/// One snapshot directory per author, kinds assigned round-robin.
int run_simulate(const SimulateConfig& config, std::ostream& log);

}  // namespace textevo
