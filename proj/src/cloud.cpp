#include "textevo/cloud.hpp"

#include <algorithm>
#include <cstdio>
#include <list>
#include <map>
#include <optional>

#include "textevo/corpus.hpp"
#include "textevo/editdist.hpp"
#include "textevo/error.hpp"

namespace textevo {

std::size_t WritingCloud::total_edits() const {
    std::size_t total = 0;
    for (auto c : edit_counts) total += c;
    return total;
}

WritingCloud build_cloud(const VersionHistory& history, Granularity level) {
    if (history.size() < 2) throw Error(Errc::insufficient_data, "a writing cloud needs at least 2 versions");
    const auto encoded = encode_versions(history, level);

    // Columns are tracked by a stable id; `order` holds ids in positional
    // order and is only ever spliced, so earlier polylines keep their order.
    std::list<std::size_t> order;
    std::vector<std::list<std::size_t>::iterator> where;
    std::vector<std::size_t> count_by_id;
    std::vector<std::pair<std::size_t, std::size_t>> id_points;  // (id, birth)
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> id_polylines(history.size());

    auto open_column = [&](std::list<std::size_t>::iterator before) {
        const std::size_t id = where.size();
        where.push_back(order.insert(before, id));
        count_by_id.push_back(0);
        return id;
    };

    std::vector<std::size_t> ids;
    std::vector<std::size_t> births;
    for (std::size_t k = 0; k < encoded[0].size(); ++k) {
        const std::size_t id = open_column(order.end());
        ids.push_back(id);
        births.push_back(0);
        id_points.emplace_back(id, 0);
    }
    for (std::size_t k = 0; k < ids.size(); ++k) id_polylines[0].emplace_back(ids[k], births[k]);

    for (std::size_t v = 1; v < encoded.size(); ++v) {
        const EditScript script = edit_script(encoded[v - 1], encoded[v]);
        std::vector<std::size_t> next_ids(encoded[v].size());
        std::vector<std::size_t> next_births(encoded[v].size());
        std::optional<std::size_t> anchor;
        for (const EditOp& op : script.ops) {
            switch (op.kind) {
            case EditKind::match:
                next_ids[*op.b_index] = ids[*op.a_index];
                next_births[*op.b_index] = births[*op.a_index];
                anchor = ids[*op.a_index];
                break;
            case EditKind::substitute: {
                const std::size_t id = ids[*op.a_index];
                next_ids[*op.b_index] = id;
                next_births[*op.b_index] = v;
                ++count_by_id[id];
                id_points.emplace_back(id, v);
                anchor = id;
                break;
            }
            case EditKind::remove:
                ++count_by_id[ids[*op.a_index]];
                anchor = ids[*op.a_index];
                break;
            case EditKind::insert: {
                const auto before = anchor ? std::next(where[*anchor]) : order.begin();
                const std::size_t id = open_column(before);
                next_ids[*op.b_index] = id;
                next_births[*op.b_index] = v;
                ++count_by_id[id];
                id_points.emplace_back(id, v);
                anchor = id;
                break;
            }
            }
        }
        ids = std::move(next_ids);
        births = std::move(next_births);
        for (std::size_t k = 0; k < ids.size(); ++k) id_polylines[v].emplace_back(ids[k], births[k]);
    }

    std::vector<std::size_t> column_of(where.size());
    std::size_t col = 0;
    for (std::size_t id : order) column_of[id] = col++;

    WritingCloud cloud;
    cloud.level = level;
    cloud.n_columns = where.size();
    cloud.edit_counts.assign(cloud.n_columns, 0);
    for (std::size_t id = 0; id < where.size(); ++id) cloud.edit_counts[column_of[id]] = count_by_id[id];
    for (auto [id, birth] : id_points) cloud.points.push_back({column_of[id], birth});
    std::sort(cloud.points.begin(), cloud.points.end());
    cloud.points.erase(std::unique(cloud.points.begin(), cloud.points.end()), cloud.points.end());
    cloud.polylines.resize(id_polylines.size());
    for (std::size_t v = 0; v < id_polylines.size(); ++v) {
        for (auto [id, birth] : id_polylines[v]) cloud.polylines[v].push_back({column_of[id], birth});
    }
    return cloud;
}

std::vector<ProfilePoint> edit_profile(const WritingCloud& cloud) {
    std::vector<ProfilePoint> out;
    out.reserve(cloud.n_columns);
    for (std::size_t c = 0; c < cloud.n_columns; ++c) {
        const double pos = cloud.n_columns > 1 ? static_cast<double>(c) / static_cast<double>(cloud.n_columns - 1) : 0.0;
        out.push_back({pos, static_cast<double>(cloud.edit_counts[c])});
    }
    return out;
}

std::vector<BandPoint> mean_profile(const std::vector<std::vector<ProfilePoint>>& profiles, std::size_t grid_points,
                                    std::size_t n_boot, double level, std::uint64_t seed) {
    if (profiles.size() < 2) throw Error(Errc::insufficient_data, "averaging profiles needs at least 2 authors");
    const auto grid = unit_grid(grid_points);
    std::vector<std::vector<double>> curves;
    curves.reserve(profiles.size());
    for (const auto& prof : profiles) {
        if (prof.empty()) throw Error(Errc::insufficient_data, "empty edit profile");
        std::vector<double> xs, ys;
        for (const auto& pt : prof) {
            xs.push_back(pt.position);
            ys.push_back(pt.edits);
        }
        curves.push_back(interpolate(xs, ys, grid));
    }
    return mean_band(curves, grid, level, n_boot, seed);
}

std::vector<CloudSegment> segment_multiplicities(const WritingCloud& cloud) {
    std::map<std::pair<CloudPoint, CloudPoint>, std::size_t> counts;
    for (const auto& line : cloud.polylines) {
        for (std::size_t k = 1; k < line.size(); ++k) ++counts[{line[k - 1], line[k]}];
    }
    std::vector<CloudSegment> out;
    out.reserve(counts.size());
    for (const auto& [seg, m] : counts) out.push_back({seg.first, seg.second, m});
    return out;
}

std::string cloud_csv(const WritingCloud& cloud) {
    std::string out = "version,column,birth_version\n";
    for (std::size_t v = 0; v < cloud.polylines.size(); ++v) {
        for (const auto& pt : cloud.polylines[v]) {
            out += std::to_string(v) + ',' + std::to_string(pt.column) + ',' + std::to_string(pt.birth_version) + '\n';
        }
    }
    return out;
}

namespace {

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string cloud_svg(const WritingCloud& cloud, std::string_view comment) {
    constexpr double kWidth = 800.0;
    constexpr double kHeight = 600.0;
    constexpr double kMargin = 50.0;
    const double col_span = cloud.n_columns > 1 ? static_cast<double>(cloud.n_columns - 1) : 1.0;
    const double ver_span = cloud.polylines.size() > 1 ? static_cast<double>(cloud.polylines.size() - 1) : 1.0;
    auto x = [&](const CloudPoint& p) { return kMargin + static_cast<double>(p.column) / col_span * (kWidth - 2 * kMargin); };
    // Later births sit higher, as time runs up the vertical axis.
    auto y = [&](const CloudPoint& p) {
        return kHeight - kMargin - static_cast<double>(p.birth_version) / ver_span * (kHeight - 2 * kMargin);
    };

    const auto segments = segment_multiplicities(cloud);
    std::size_t max_mult = 1;
    for (const auto& s : segments) max_mult = std::max(max_mult, s.multiplicity);

    std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
    if (!comment.empty()) svg += "<!-- " + std::string(comment) + " -->\n";
    svg += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    svg += "<g stroke=\"#1f3b73\" stroke-width=\"1\" fill=\"none\">\n";
    for (const auto& s : segments) {
        const double opacity = 0.1 + 0.9 * static_cast<double>(s.multiplicity) / static_cast<double>(max_mult);
        svg += "<line x1=\"" + fixed2(x(s.from)) + "\" y1=\"" + fixed2(y(s.from)) + "\" x2=\"" + fixed2(x(s.to)) +
               "\" y2=\"" + fixed2(y(s.to)) + "\" stroke-opacity=\"" + fixed2(opacity) + "\"/>\n";
    }
    svg += "</g>\n<g fill=\"#c0392b\">\n";
    for (const auto& p : cloud.points) {
        svg += "<circle cx=\"" + fixed2(x(p)) + "\" cy=\"" + fixed2(y(p)) + "\" r=\"2\"/>\n";
    }
    svg += "</g>\n";
    svg += "<text x=\"400\" y=\"590\" text-anchor=\"middle\" font-size=\"14\">" + std::string(to_string(cloud.level)) +
           " number</text>\n";
    svg += "<text x=\"15\" y=\"300\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 15 300)\">time of edit (version)</text>\n";
    svg += "</svg>\n";
    return svg;
}

CloudPlotData cloud_plot_data(const WritingCloud& cloud, std::string_view comment) {
    return {segment_multiplicities(cloud), cloud_csv(cloud), cloud_svg(cloud, comment)};
}

}  // namespace textevo
