#include "commands.hpp"

#include <cmath>
#include <limits>

#include "casimag/anisotropy.hpp"
#include "casimag/parallel.hpp"

namespace casimag::cli {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

Record start(const RunConfig& c, const RunOptions& opt, const std::string& command) {
  Record r;
  r.command = command;
  r.version = opt.version;
  r.digest = config_digest(c);
  r.inputs = c.source;
  r.notes.push_back("mirror_a " + c.mirror_a.description + ", mirror_b " +
                    c.mirror_b.description);
  return r;
}

template <class T>
const T& require(const MirrorConfig& m, const char* role, const char* what) {
  const T* p = std::get_if<T>(&m.spec);
  if (p == nullptr) {
    throw ConfigError(std::string(role) + ".type: this command needs " + what + ", got " +
                      m.description);
  }
  return *p;
}

// Slope over the lowest or highest half-decade of the grid, if defined there.
nlohmann::json exponent(const std::vector<double>& d, const std::vector<double>& v, bool small) {
  const double lo = small ? d.front() : d.back() / std::sqrt(10.0);
  const double hi = small ? d.front() * std::sqrt(10.0) : d.back();
  try {
    const auto fit = scaling_exponent(d, v, lo * (1 - 1e-12), hi * (1 + 1e-12));
    return {{"slope", fit.slope}, {"points", fit.points}, {"window_nm", {lo, hi}}};
  } catch (const std::exception& e) {
    return {{"slope", nullptr}, {"reason", e.what()}, {"window_nm", {lo, hi}}};
  }
}

}  // namespace

CommandResult run_energy(const RunConfig& c, const RunOptions& opt) {
  CommandResult out{start(c, opt, "energy")};
  Record& r = out.record;
  r.columns = {{"distance", "nm"},          {"energy", "J/m2"},
               {"energy_error", "J/m2"},    {"magnetic_energy", "J/m2"},
               {"force", "N/m2"},           {"magnetic_force", "N/m2"},
               {"status", "-"}};
  const std::size_t n = c.distances.size();
  r.rows.assign(n, {});
  const bool magnetic = is_magnetic(c.mirror_a.spec) || is_magnetic(c.mirror_b.spec);
  parallel_for(n, opt.threads, [&](std::size_t i) {
    const double d = c.distances[i];
    try {
      const auto e = casimir_energy_general(c.mirror_a.spec, c.mirror_b.spec, d, c.quadrature);
      const auto f = casimir_force(c.mirror_a.spec, c.mirror_b.spec, d, c.quadrature);
      double em = 0.0, fm = 0.0;
      if (magnetic) {
        em = casimir_magnetic_energy(c.mirror_a.spec, c.mirror_b.spec, d, c.quadrature).value;
        fm = casimir_magnetic_force(c.mirror_a.spec, c.mirror_b.spec, d, c.quadrature).value;
      }
      r.rows[i] = {d, e.value, e.estimated_error, em, f.value, fm, std::string("ok")};
    } catch (const std::exception& ex) {
      r.rows[i] = {d, nan, nan, nan, nan, nan, std::string(ex.what())};
    }
  });
  for (const auto& row : r.rows) out.numeric_failures += std::get<std::string>(row.back()) != "ok";
  return out;
}

CommandResult run_decompose(const RunConfig& c, const RunOptions& opt) {
  const auto& a = require<IsotropicMetal>(c.mirror_a, "mirror_a", "an isotropic mirror");
  const auto& b = require<Ferromagnet>(c.mirror_b, "mirror_b", "a ferromagnet");
  CommandResult out{start(c, opt, "decompose")};
  Record& r = out.record;
  r.columns = {{"distance", "nm"},   {"e0", "J/m2"},         {"e_perp", "J/m2"},
               {"e_par1", "J/m2"},   {"e_par2", "J/m2"},     {"e_anisotropy", "J/m2"},
               {"f0", "N/m2"},       {"f_perp", "N/m2"},     {"f_par1", "N/m2"},
               {"f_par2", "N/m2"},   {"disk_force", "N"},    {"easy_axis", "-"},
               {"status", "-"}};
  const std::size_t n = c.distances.size();
  std::vector<Decomposition> terms(n);
  std::vector<std::string> status(n, "ok");
  parallel_for(n, opt.threads, [&](std::size_t i) {
    try {
      terms[i] = casimir_decomposed(a, b, c.distances[i], c.quadrature);
    } catch (const std::exception& ex) {
      status[i] = ex.what();
    }
  });
  std::vector<double> d, e_perp, f_perp, f_par1, f_par2;
  for (std::size_t i = 0; i < n; ++i) {
    if (status[i] != "ok") {
      ++out.numeric_failures;
      r.rows.push_back({c.distances[i], nan, nan, nan, nan, nan, nan, nan, nan, nan, nan,
                        std::string("-"), status[i]});
      continue;
    }
    const auto& e = terms[i].energy;
    const auto& f = terms[i].force;
    const double k = e.anisotropy();
    const std::string easy = k > 0 ? "in_plane" : k < 0 ? "perpendicular" : "none";
    r.rows.push_back({c.distances[i], e.e0, e.e_perp, e.e_par1, e.e_par2, k, f.f0, f.f_perp,
                      f.f_par1, f.f_par2,
                      std::abs(disk_force(f.anisotropy(), c.estimates.disk_radius_um)), easy,
                      std::string("ok")});
    d.push_back(c.distances[i]);
    e_perp.push_back(e.e_perp);
    f_perp.push_back(f.f_perp);
    f_par1.push_back(f.f_par1);
    f_par2.push_back(f.f_par2);
  }
  if (!d.empty()) {
    r.summary["exponents"] = {
        {"e_perp_large_d", exponent(d, e_perp, false)},
        {"f_perp_large_d", exponent(d, f_perp, false)},
        {"f_par2_small_d", exponent(d, f_par2, true)},
        {"f_perp_small_d", exponent(d, f_perp, true)},
        {"f_par1_small_d", exponent(d, f_par1, true)},
    };
  }
  r.summary["disk_radius_um"] = c.estimates.disk_radius_um;
  return out;
}

CommandResult run_scan_angle(const RunConfig& c, const RunOptions& opt) {
  const auto& b = require<Ferromagnet>(c.mirror_b, "mirror_b", "a ferromagnet");
  const auto* plate = std::get_if<UniaxialPlate>(&c.mirror_a.spec);
  const auto* metal = std::get_if<IsotropicMetal>(&c.mirror_a.spec);
  if (plate == nullptr && metal == nullptr) {
    throw ConfigError("mirror_a.type: scan-angle needs a uniaxial or isotropic mirror, got " +
                      c.mirror_a.description);
  }
  CommandResult out{start(c, opt, "scan-angle")};
  Record& r = out.record;
  const std::string angle_name = plate ? "delta_phi" : "theta";
  r.columns = {{"distance", "nm"},        {angle_name, "rad"},         {"delta_e", "J/m2"},
               {"fit_class", "-"},        {"signed_amplitude", "J/m2"}, {"fit_residual", "1"}};
  const std::size_t n = c.distances.size();
  std::vector<AngularScan> scans(n);
  std::vector<std::string> status(n, "ok");
  parallel_for(n, opt.threads, [&](std::size_t i) {
    try {
      scans[i] = plate ? scan_inplane(*plate, b, c.distances[i], c.angle_count, c.quadrature)
                       : scan_outofplane(*metal, b, c.distances[i], c.angle_count, c.quadrature).scan;
    } catch (const std::exception& ex) {
      status[i] = ex.what();
    }
  });
  auto fits = nlohmann::json::array();
  for (std::size_t i = 0; i < n; ++i) {
    if (status[i] != "ok") {
      ++out.numeric_failures;
      r.notes.push_back("distance " + format_number(c.distances[i]) + " failed: " + status[i]);
      fits.push_back({{"distance_nm", c.distances[i]}, {"error", status[i]}});
      continue;
    }
    const auto& s = scans[i];
    for (std::size_t k = 0; k < s.angles.size(); ++k) {
      r.rows.push_back({s.distance, s.angles[k], s.delta_e[k], std::string(to_string(s.fit_class)),
                        s.signed_amplitude, s.fit_offset_residual});
    }
    const auto t = torque(s, c.estimates.plate_radius_um);
    fits.push_back({{"distance_nm", s.distance},
                    {"fit_class", to_string(s.fit_class)},
                    {"amplitude_j_per_m2", s.fit_amplitude},
                    {"signed_amplitude_j_per_m2", s.signed_amplitude},
                    {"fit_residual", s.fit_offset_residual},
                    {"quadrature_error_j_per_m2", s.max_quadrature_error},
                    {"proximity_force_n", proximity_force(s.fit_amplitude, c.estimates.sphere_radius_um)},
                    {"peak_torque_n_m", t.peak},
                    {"torque_from_fit", t.analytic}});
  }
  r.summary["fits"] = fits;
  r.summary["sphere_radius_um"] = c.estimates.sphere_radius_um;
  r.summary["plate_radius_um"] = c.estimates.plate_radius_um;
  return out;
}

CommandResult run_scan_distance(const RunConfig& c, const RunOptions& opt) {
  const auto& a = require<UniaxialPlate>(c.mirror_a, "mirror_a", "a uniaxial plate");
  const auto& b = require<Ferromagnet>(c.mirror_b, "mirror_b", "a ferromagnet");
  CommandResult out{start(c, opt, "scan-distance")};
  Record& r = out.record;
  r.columns = {{"distance", "nm"}, {"signed_amplitude", "J/m2"}, {"fit_class", "-"},
               {"fit_residual", "1"}, {"status", "-"}};
  const auto curve =
      amplitude_vs_distance(a, b, c.distances, c.angle_count, c.quadrature, opt.threads);
  for (std::size_t i = 0; i < curve.distances.size(); ++i) {
    const bool ok = curve.failures[i].empty();
    out.numeric_failures += !ok;
    r.rows.push_back({curve.distances[i], curve.signed_amplitude[i],
                      std::string(to_string(curve.classes[i])), curve.residuals[i],
                      ok ? std::string("ok") : curve.failures[i]});
  }
  auto kinks = nlohmann::json::array();
  for (const auto& k : curve.kinks) {
    kinks.push_back({{"lower_nm", k.lower}, {"upper_nm", k.upper}});
    r.notes.push_back("kink between " + format_number(k.lower) + " nm and " +
                      format_number(k.upper) + " nm");
  }
  r.summary["kinks"] = kinks;
  r.summary["kink_count"] = curve.kinks.size();
  return out;
}

}  // namespace casimag::cli
