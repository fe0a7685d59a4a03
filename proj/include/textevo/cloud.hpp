#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "textevo/segment.hpp"
#include "textevo/stats.hpp"

namespace textevo {

struct VersionHistory;

struct CloudPoint {
    std::size_t column = 0;
    std::size_t birth_version = 0;

    auto operator<=>(const CloudPoint&) const = default;
};

/// All units ever written, on a global positional axis (column) and the
/// version that produced their current content (birth_version). Columns of
/// units inserted later are spliced in where they appeared, so a unit keeps
/// its relative position across the whole history.
struct WritingCloud {
    Granularity level = Granularity::sentence;
    std::size_t n_columns = 0;
    std::vector<CloudPoint> points;                  // sorted, distinct
    std::vector<std::vector<CloudPoint>> polylines;  // one per version
    std::vector<std::size_t> edit_counts;            // one per column

    std::size_t total_edits() const;
};

/// Incremental alignment of consecutive versions. Substitutions keep the
/// column with a new birth, insertions open a column right after the previous
/// alignment column, removals leave the column untraversed. Each non-match
/// event counts one edit at its column.
WritingCloud build_cloud(const VersionHistory& history, Granularity level = Granularity::sentence);

struct ProfilePoint {
    double position = 0.0;  // column / (n_columns - 1)
    double edits = 0.0;
};

std::vector<ProfilePoint> edit_profile(const WritingCloud& cloud);

/// Average of several profiles on a common grid of `grid_points` positions,
/// with a pointwise bootstrap band over authors.
std::vector<BandPoint> mean_profile(const std::vector<std::vector<ProfilePoint>>& profiles,
                                    std::size_t grid_points = 101, std::size_t n_boot = 1000,
                                    double level = 0.995, std::uint64_t seed = 0);

struct CloudSegment {
    CloudPoint from;
    CloudPoint to;
    std::size_t multiplicity = 0;  // polylines traversing this segment
};

struct CloudPlotData {
    std::vector<CloudSegment> segments;  // sorted by (from, to)
    std::string csv;                     // version,column,birth_version
    std::string svg;
};

std::vector<CloudSegment> segment_multiplicities(const WritingCloud& cloud);
std::string cloud_csv(const WritingCloud& cloud);

/// Standalone SVG; segment opacity is proportional to multiplicity. `comment`
/// is embedded verbatim as an XML comment when non-empty.
std::string cloud_svg(const WritingCloud& cloud, std::string_view comment = {});

CloudPlotData cloud_plot_data(const WritingCloud& cloud, std::string_view comment = {});

}  // namespace textevo
