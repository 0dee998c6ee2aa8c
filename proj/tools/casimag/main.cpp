// casimag: batch front-end for Casimir magnetic-anisotropy calculations.
//
//   casimag energy        --config run.json [--out file] [--format csv|json]
//   casimag decompose     ...
//   casimag scan-angle    ...
//   casimag scan-distance ...
//   casimag validate      --config run.json
//
// Exit status: 0 ok, 1 configuration error, 2 numeric failure.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

#ifndef CASIMAG_VERSION
#define CASIMAG_VERSION "0.0.0"
#endif

namespace {

using namespace casimag::cli;

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_numeric = 2;

struct Flags {
  std::string config;
  std::string out;
  std::string format = "csv";
  double rel_tol = 0.0;
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, Flags& f, bool outputs) {
  cmd->add_option("--config", f.config, "Run configuration (JSON)")->required();
  cmd->add_option("--rel-tol", f.rel_tol, "Override quadrature relative tolerance");
  if (!outputs) return;
  cmd->add_option("--out", f.out, "Output file (default: stdout)");
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
}

RunConfig load(const Flags& f) {
  RunConfig c = load_config(f.config);
  if (f.rel_tol != 0.0) {
    c.quadrature.rel_tol = f.rel_tol;
    try {
      c.quadrature.validate();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("--rel-tol: ") + e.what());
    }
    c.source["quadrature"]["rel_tol"] = f.rel_tol;  // part of the digest
  }
  return c;
}

int validate(const Flags& f) {
  RunConfig c;
  try {
    c = load(f);
  } catch (const ConfigError& e) {
    std::cout << "error: " << e.what() << "\n";
    return exit_config;
  }
  bool bad = false;
  for (const auto& finding : validation_report(c)) {
    std::cout << (finding.error ? "error: " : "warning: ") << finding.message << "\n";
    bad = bad || finding.error;
  }
  if (bad) return exit_config;
  std::cout << "ok\n";
  return exit_ok;
}

int run(const Flags& f, CommandResult (*command)(const RunConfig&, const RunOptions&)) {
  CommandResult result;
  try {
    const RunConfig c = load(f);
    for (const auto& finding : validation_report(c)) {
      if (finding.error) throw ConfigError(finding.message);
    }
    result = command(c, RunOptions{f.threads, CASIMAG_VERSION});
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return exit_numeric;
  }

  std::ofstream file;
  if (!f.out.empty()) {
    file.open(f.out);
    if (!file) {
      std::cerr << "config error: cannot write " << f.out << "\n";
      return exit_config;
    }
  }
  std::ostream& out = f.out.empty() ? std::cout : file;
  if (f.format == "json") {
    write_json(out, result.record);
  } else {
    write_csv(out, result.record);
  }
  if (result.numeric_failures > 0) {
    std::cerr << result.numeric_failures << " point(s) failed; see status column\n";
    return exit_numeric;
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir energy, forces and magnetic anisotropy between a ferromagnet and a second mirror"};
  app.set_version_flag("--version", CASIMAG_VERSION);
  app.require_subcommand(1);

  Flags f;
  auto* energy = app.add_subcommand("energy", "Exact energy and force per unit area");
  auto* decompose = app.add_subcommand("decompose", "Polar/longitudinal/transverse decomposition");
  auto* scan_angle = app.add_subcommand("scan-angle", "Angular energy scans with sin^2 fits");
  auto* scan_distance = app.add_subcommand("scan-distance", "Anisotropy amplitude and kinks vs distance");
  auto* check = app.add_subcommand("validate", "Check a configuration and its data files");
  for (auto* c : {energy, decompose, scan_angle, scan_distance}) add_common(c, f, true);
  add_common(check, f, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  if (*check) return validate(f);
  if (*energy) return run(f, run_energy);
  if (*decompose) return run(f, run_decompose);
  if (*scan_angle) return run(f, run_scan_angle);
  return run(f, run_scan_distance);
}
