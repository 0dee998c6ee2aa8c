#include "output.hpp"

#include <cmath>
#include <cstdio>

namespace casimag::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

namespace {

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  std::string s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch == '\n' ? ' ' : ch;
  }
  return quoted + "\"";
}

}  // namespace

void write_csv(std::ostream& out, const Record& r) {
  out << "# casimag " << r.version << " " << r.command << "\n";
  out << "# config_sha256 " << r.digest << "\n";
  for (const auto& n : r.notes) out << "# " << n << "\n";
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    out << (i ? "," : "") << r.columns[i].name << "(" << r.columns[i].unit << ")";
  }
  out << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << "\n";
  }
}

void write_json(std::ostream& out, const Record& r) {
  nlohmann::ordered_json doc;
  doc["tool"] = "casimag";
  doc["version"] = r.version;
  doc["command"] = r.command;
  doc["config_sha256"] = r.digest;
  doc["inputs"] = r.inputs;
  auto cols = nlohmann::ordered_json::array();
  for (const auto& c : r.columns) cols.push_back({{"name", c.name}, {"unit", c.unit}});
  doc["columns"] = cols;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    auto jr = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      if (const auto* d = std::get_if<double>(&c)) {
        if (std::isnan(*d)) {
          jr.push_back(nullptr);
        } else {
          jr.push_back(*d);
        }
      } else {
        jr.push_back(std::get<std::string>(c));
      }
    }
    rows.push_back(jr);
  }
  doc["rows"] = rows;
  doc["summary"] = r.summary;
  out << doc.dump(2) << "\n";
}

}  // namespace casimag::cli
