#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "pzeta/error.hpp"

namespace pzeta {

inline constexpr const char* tool_name = "pzeta";
inline constexpr const char* tool_version = "1.0.0";

// A table entry: gated ("n/a"), integer, real, or text.
struct NotApplicable {
  bool operator==(const NotApplicable&) const = default;
};
using Entry = std::variant<NotApplicable, long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Entry>> rows;
  std::vector<std::pair<std::string, Entry>> footer;

  void add_row(std::vector<Entry> row) {
    require(row.size() == columns.size(), "row width does not match the header");
    rows.push_back(std::move(row));
  }
};

struct Metadata {
  std::vector<std::pair<std::string, std::string>> config;
  double wall_seconds = 0.0;
};

inline std::string format_real(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::overflow, "non-finite value in output");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_entry(const Entry& c) {
  struct Visitor {
    std::string operator()(NotApplicable) const { return "n/a"; }
    std::string operator()(long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline nlohmann::ordered_json json_entry(const Entry& c) {
  struct Visitor {
    nlohmann::ordered_json operator()(NotApplicable) const { return "n/a"; }
    nlohmann::ordered_json operator()(long v) const { return v; }
    nlohmann::ordered_json operator()(double v) const {
      if (!std::isfinite(v)) throw Error(ErrorCode::overflow, "non-finite value in output");
      return v;
    }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

}  // namespace detail

// CSV: '#' metadata lines, one header line, the rows, then '#' footer lines.
inline void write_csv(std::ostream& os, const Table& t, const Metadata& meta) {
  os << "# tool: " << tool_name << ' ' << tool_version << '\n';
  for (const auto& [k, v] : meta.config) os << "# config." << k << ": " << v << '\n';
  os << "# wall_time_s: " << format_real(meta.wall_seconds) << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::csv_field(format_entry(row[i]));
    os << '\n';
  }
  for (const auto& [k, v] : t.footer) os << "# footer." << k << ": " << format_entry(v) << '\n';
}

inline nlohmann::ordered_json to_json(const Table& t, const Metadata& meta) {
  nlohmann::ordered_json j;
  j["meta"]["tool"] = tool_name;
  j["meta"]["version"] = tool_version;
  for (const auto& [k, v] : meta.config) j["meta"]["config"][k] = v;
  j["meta"]["wall_time_s"] = meta.wall_seconds;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = detail::json_entry(row[i]);
    j["rows"].push_back(std::move(r));
  }
  if (!t.footer.empty())
    for (const auto& [k, v] : t.footer) j["footer"][k] = detail::json_entry(v);
  return j;
}

inline void write_json(std::ostream& os, const Table& t, const Metadata& meta) { os << to_json(t, meta).dump(2) << '\n'; }

}  // namespace pzeta
