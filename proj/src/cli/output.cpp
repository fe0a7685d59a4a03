#include "output.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "textevo/error.hpp"
#include "textevo/rng.hpp"

namespace textevo::cli {

std::string Meta::line() const {
    return std::string(kToolName) + " " + kToolVersion + " seed=" + std::to_string(seed) + " config=" + digest;
}

json Meta::object() const {
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["seed"] = seed;
    j["config_digest"] = digest;
    return j;
}

Meta make_meta(const RunConfig& config) {
    return {config.seed, config_digest(config)};
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_text(const std::filesystem::path& path, std::string_view data) {
    std::ofstream out(path, std::ios::binary);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error(Errc::unreadable_source, "cannot write " + path.string());
}

void write_json(const std::filesystem::path& path, const json& body, const Meta& meta) {
    json j;
    j["meta"] = meta.object();
    for (const auto& [k, v] : body.items()) j[k] = v;
    write_text(path, j.dump(2) + "\n");
}

void write_csv(const std::filesystem::path& path, std::string_view header, std::string_view rows, const Meta& meta) {
    std::string data = "# " + meta.line() + "\n";
    data += header;
    data += '\n';
    data += rows;
    write_text(path, data);
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::unreadable_source, "cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::exception& e) {
        throw Error(Errc::unreadable_source, path.string() + ": " + e.what());
    }
}

double number_or_nan(const json& j) {
    return j.is_number() ? j.get<double>() : std::numeric_limits<double>::quiet_NaN();
}

std::string safe_name(std::string_view author_id) {
    std::string out;
    for (char c : author_id) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                        c == '_' || c == '.';
        out += ok ? c : '_';
    }
    if (out.empty() || out == "." || out == "..") out = "_" + out;
    return out;
}

}  // namespace textevo::cli

namespace textevo {

std::string config_digest(const RunConfig& c) {
    std::string key = "seed=" + std::to_string(c.seed);
    key += ";granularity=" + std::string(c.granularity ? to_string(*c.granularity) : "auto");
    key += ";min_changes=" + std::to_string(c.min_changes);
    key += ";n_boot=" + std::to_string(c.n_boot);
    key += ";n_shuffles=" + std::to_string(c.n_shuffles);
    key += ";flow_band_deg=" + cli::fmt(c.flow_band_deg);
    key += ";angle_method=" + std::string(to_string(c.angle_method));
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(key)));
    return buf;
}

}  // namespace textevo
