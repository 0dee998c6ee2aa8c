#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace casimag::cli {

struct Column {
  std::string name;
  std::string unit;  // "1" for dimensionless, "-" for text
};

using Cell = std::variant<double, std::string>;

/// A result table plus free-form summary, written as CSV or JSON.
struct Record {
  std::string command;
  std::string version;
  std::string digest;
  nlohmann::json inputs;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<std::string> notes;  // extra '#' lines in CSV
};

void write_csv(std::ostream& out, const Record& r);
void write_json(std::ostream& out, const Record& r);

/// Fixed-format number used in CSV cells.
std::string format_number(double v);

}  // namespace casimag::cli
