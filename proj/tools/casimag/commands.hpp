#pragma once

#include <string>

#include "config.hpp"
#include "output.hpp"

namespace casimag::cli {

struct RunOptions {
  unsigned threads = 0;
  std::string version;
};

/// Each command fills a Record. `numeric_failures` counts points that could
/// not be evaluated; the sweep carries on past them.
struct CommandResult {
  Record record;
  int numeric_failures = 0;
};

CommandResult run_energy(const RunConfig& config, const RunOptions& opt);
CommandResult run_decompose(const RunConfig& config, const RunOptions& opt);
CommandResult run_scan_angle(const RunConfig& config, const RunOptions& opt);
CommandResult run_scan_distance(const RunConfig& config, const RunOptions& opt);

}  // namespace casimag::cli
