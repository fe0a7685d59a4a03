#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "textevo/pipeline.hpp"

namespace textevo::cli {

using json = nlohmann::ordered_json;

struct Meta {
    std::uint64_t seed = 0;
    std::string digest;

    std::string line() const;  // "textevo 0.1.0 seed=... config=..."
    json object() const;
};

Meta make_meta(const RunConfig& config);

/// Shortest text that reads back as the same double; "nan"/"inf" spelled out.
std::string fmt(double v);

std::string csv_field(std::string_view s);

void write_text(const std::filesystem::path& path, std::string_view data);

/// Writes `body` with a leading "meta" object.
void write_json(const std::filesystem::path& path, const json& body, const Meta& meta);

/// Writes a "# <meta>" line, the header line, then `rows` (each ending in '\n').
void write_csv(const std::filesystem::path& path, std::string_view header, std::string_view rows, const Meta& meta);

json read_json(const std::filesystem::path& path);

/// Double or NaN from a JSON number or null.
double number_or_nan(const json& j);

/// Portable directory name for an author id.
std::string safe_name(std::string_view author_id);

}  // namespace textevo::cli
