#pragma once

// Tabular output shared by all CLI commands: a '#'-prefixed JSON metadata
// line, a header row, then rows printed with 17 significant digits so every
// double round-trips exactly.

#include <nlohmann/json.hpp>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace geophase {

struct Table {
  nlohmann::json meta = nlohmann::json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json summary = nlohmann::json::object();

  void add_row(std::vector<double> row) { rows.push_back(std::move(row)); }

  /// Index of a named column; throws if absent.
  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    throw std::out_of_range("no column named " + name);
  }

  std::vector<double> column_values(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<double> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.push_back(r[c]);
    return v;
  }
};

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string to_csv(const Table& t) {
  std::ostringstream os;
  os << "# " << t.meta.dump() << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
  if (!t.summary.empty()) os << "# summary " << t.summary.dump() << '\n';
  return os.str();
}

inline std::string to_json(const Table& t) {
  nlohmann::json j;
  j["meta"] = t.meta;
  j["columns"] = t.columns;
  j["rows"] = t.rows;
  if (!t.summary.empty()) j["summary"] = t.summary;
  return j.dump(2) + "\n";
}

}  // namespace geophase
