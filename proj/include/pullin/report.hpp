#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pullin/config.hpp"

namespace pullin {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "pullinlab 1.0.0";

// Full effective-configuration echo: every knob, defaults included, so a
// result never depends on a value that is not visible in the report.
Json config_echo(const RunConfig& cfg);

// Companion metadata path: "<out minus .json>.meta.json".
std::string meta_path(const std::string& out_path);

// Writes {command, config, result, version} as 2-space-indented JSON plus a
// trailing newline. Keys are stored sorted, so the bytes depend only on the
// values: identical config + seed gives identical files. The timestamp and
// wall-clock go to the metadata companion, which is excluded from that
// guarantee.
void write_result(const RunConfig& cfg, const std::string& command,
                  const Json& result, double wall_seconds);

// Shortest round-trip decimal form of a double.
std::string format_double(double v);

// Quotes a field when it contains a comma, quote, or line break; inner
// quotes are doubled.
std::string csv_escape(const std::string& field);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace pullin
