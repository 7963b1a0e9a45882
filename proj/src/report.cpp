#include "pullin/report.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>

#include "pullin/errors.hpp"

namespace pullin {

namespace {

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ReportError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ReportError("write failed for '" + path + "'");
}

}  // namespace

Json config_echo(const RunConfig& cfg) {
  Json echo;
  for (const auto& key : double_knob_names())
    echo[key] = get_double_knob(cfg, key);
  for (const auto& key : int_knob_names())
    echo[key] = get_int_knob(cfg, key);
  for (const auto& key : string_knob_names())
    echo[key] = get_string_knob(cfg, key);
  echo["seed"] = cfg.seed;
  return echo;
}

std::string meta_path(const std::string& out_path) {
  const std::string suffix = ".json";
  std::string stem = out_path;
  if (stem.size() > suffix.size() &&
      stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0)
    stem.resize(stem.size() - suffix.size());
  return stem + ".meta.json";
}

void write_result(const RunConfig& cfg, const std::string& command,
                  const Json& result, double wall_seconds) {
  Json root;
  root["command"] = command;
  root["config"] = config_echo(cfg);
  root["result"] = result;
  root["version"] = kToolVersion;
  write_text(cfg.out, root.dump(2) + "\n");

  Json meta;
  meta["timestamp"] = utc_timestamp();
  meta["wall_seconds"] = wall_seconds;
  write_text(meta_path(cfg.out), meta.dump(2) + "\n");
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ReportError("cannot write '" + path + "'");
  for (std::size_t c = 0; c < header.size(); ++c)
    out << (c ? "," : "") << csv_escape(header[c]);
  out << "\n";
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw ReportError("csv row width does not match the header");
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << csv_escape(row[c]);
    out << "\n";
  }
  if (!out) throw ReportError("write failed for '" + path + "'");
}

}  // namespace pullin
