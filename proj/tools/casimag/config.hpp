#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "casimag/casimir.hpp"

namespace casimag::cli {

/// Configuration problem, reported with the JSON path of the offending field
/// (or line/column for syntax errors). Maps to exit status 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MirrorConfig {
  std::string description;  // echo of the input, e.g. "uniaxial(quartz)"
  MirrorSpec spec;
  std::vector<std::string> warnings;    // e.g. a poor Drude splice
  std::vector<std::string> violations;  // eps(i w) < 1 or increasing
};

struct Estimates {
  double disk_radius_um = 10.0;
  double sphere_radius_um = 100.0;
  double plate_radius_um = 100.0;
};

struct RunConfig {
  nlohmann::json source;  // parsed document, for echo and digest
  std::filesystem::path base_dir;
  MirrorConfig mirror_a;
  MirrorConfig mirror_b;
  std::vector<double> distances;  // nm, ascending
  int angle_count = 16;
  QuadratureConfig quadrature;
  Estimates estimates;
  std::vector<std::string> grid_diagnostics;
};

/// Parses and validates a configuration file. Relative data-file paths are
/// resolved against the file's directory, then against the bundled data.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir,
                       const std::string& source_name = "<config>");

/// SHA-256 (hex) of the canonical serialization of the configuration.
std::string config_digest(const RunConfig& config);

struct Finding {
  bool error;
  std::string message;
};

/// Model invariant violations (errors), data-table and grid warnings.
std::vector<Finding> validation_report(const RunConfig& config);

}  // namespace casimag::cli
