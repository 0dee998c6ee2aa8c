#include "casimag/anisotropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "casimag/errors.hpp"
#include "casimag/parallel.hpp"
#include "casimag/units.hpp"

namespace casimag {

namespace {

using units::pi;

std::vector<double> uniform_angles(int n) {
  std::vector<double> a(n);
  for (int i = 0; i < n; ++i) a[i] = pi * i / n;
  return a;
}

AngularScan finish_scan(double d_nm, std::vector<double> angles, std::vector<double> energy,
                        double max_error) {
  AngularScan s;
  s.distance = d_nm;
  const double lowest = *std::min_element(energy.begin(), energy.end());
  for (double& e : energy) e -= lowest;
  const Sin2Fit fit = fit_sin2(angles, energy);
  s.angles = std::move(angles);
  s.delta_e = std::move(energy);
  s.signed_amplitude = fit.amplitude;
  s.fit_amplitude = std::abs(fit.amplitude);
  s.fit_class = classify(fit);
  s.fit_offset_residual = fit.residual;
  s.max_quadrature_error = max_error;
  return s;
}

}  // namespace

const char* to_string(AngularClass c) {
  switch (c) {
    case AngularClass::sin2: return "sin2";
    case AngularClass::cos2: return "cos2";
    case AngularClass::mixed: return "mixed";
  }
  return "?";
}

const char* to_string(EasyAxis e) {
  switch (e) {
    case EasyAxis::perpendicular: return "perpendicular";
    case EasyAxis::in_plane: return "in_plane";
    case EasyAxis::none: return "none";
  }
  return "?";
}

Sin2Fit fit_sin2(std::span<const double> angles, std::span<const double> values) {
  if (angles.size() != values.size() || angles.size() < 3) {
    throw DomainError("fit_sin2 needs at least three (angle, value) pairs");
  }
  const double n = static_cast<double>(angles.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double x = std::pow(std::sin(angles[i]), 2);
    sx += x;
    sy += values[i];
    sxx += x * x;
    sxy += x * values[i];
  }
  const double det = n * sxx - sx * sx;
  if (!(std::abs(det) > 0.0)) throw DomainError("fit_sin2: angles do not determine sin^2 amplitude");
  Sin2Fit fit;
  fit.amplitude = (n * sxy - sx * sy) / det;
  fit.offset = (sy - fit.amplitude * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double r = values[i] - fit.offset - fit.amplitude * std::pow(std::sin(angles[i]), 2);
    ss += r * r;
  }
  const double rms = std::sqrt(ss / n);
  fit.residual = fit.amplitude != 0.0 ? rms / std::abs(fit.amplitude) : (rms > 0.0 ? 
      std::numeric_limits<double>::infinity() : 0.0);
  return fit;
}

AngularClass classify(const Sin2Fit& fit) {
  if (!(fit.residual <= mixed_residual_threshold) || fit.amplitude == 0.0) return AngularClass::mixed;
  return fit.amplitude > 0.0 ? AngularClass::sin2 : AngularClass::cos2;
}

AngularScan scan_inplane(const UniaxialPlate& a, const Ferromagnet& b, double d_nm, int n_angles,
                         const QuadratureConfig& q) {
  if (n_angles < 8) throw DomainError("scan_inplane needs n_angles >= 8");
  const auto angles = uniform_angles(n_angles);
  std::vector<MagnetizationOrientation> orientations;
  for (double delta : angles) orientations.push_back({pi / 2, a.geometry.zeta + delta});
  const auto r = casimir_magnetic_energy_scan(a, b, orientations, d_nm, q);
  const double err = *std::max_element(r.error.begin(), r.error.end());
  return finish_scan(d_nm, angles, r.energy, err);
}

OutOfPlaneScan scan_outofplane(const IsotropicMetal& a, const Ferromagnet& b, double d_nm,
                               int n_angles, const QuadratureConfig& q) {
  if (n_angles < 8) throw DomainError("scan_outofplane needs n_angles >= 8");
  OutOfPlaneScan out;
  out.terms = casimir_energy_decomposed(a, b, d_nm, q);
  const auto angles = uniform_angles(n_angles);
  std::vector<double> energy;
  const double k = out.terms.anisotropy();
  for (double t : angles) energy.push_back(k * std::cos(t) * std::cos(t));
  out.scan = finish_scan(d_nm, angles, std::move(energy), 0.0);
  out.easy_axis = k > 0.0 ? EasyAxis::in_plane : k < 0.0 ? EasyAxis::perpendicular : EasyAxis::none;
  return out;
}

AmplitudeCurve amplitude_vs_distance(const UniaxialPlate& a, const Ferromagnet& b,
                                     std::span<const double> d_grid, int n_angles,
                                     const QuadratureConfig& q, unsigned threads) {
  if (d_grid.empty()) throw DomainError("amplitude_vs_distance: empty distance grid");
  if (!std::is_sorted(d_grid.begin(), d_grid.end())) {
    throw DomainError("amplitude_vs_distance: distance grid must be sorted");
  }
  const std::size_t n = d_grid.size();
  AmplitudeCurve c;
  c.distances.assign(d_grid.begin(), d_grid.end());
  c.signed_amplitude.assign(n, std::numeric_limits<double>::quiet_NaN());
  c.classes.assign(n, AngularClass::mixed);
  c.residuals.assign(n, std::numeric_limits<double>::quiet_NaN());
  c.failures.assign(n, "");

  parallel_for(n, threads, [&](std::size_t i) {
    try {
      const auto s = scan_inplane(a, b, d_grid[i], n_angles, q);
      c.signed_amplitude[i] = s.signed_amplitude;
      c.classes[i] = s.fit_class;
      c.residuals[i] = s.fit_offset_residual;
    } catch (const std::exception& e) {
      c.failures[i] = e.what();
    }
  });

  std::vector<Kink> brackets;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double lo = c.signed_amplitude[i];
    const double hi = c.signed_amplitude[i + 1];
    if (std::isnan(lo) || std::isnan(hi)) continue;
    if ((lo < 0.0) != (hi < 0.0)) brackets.push_back({d_grid[i], d_grid[i + 1]});
  }
  std::vector<double> mid_amplitude(brackets.size(), std::numeric_limits<double>::quiet_NaN());
  parallel_for(brackets.size(), threads, [&](std::size_t k) {
    const double mid = std::sqrt(brackets[k].lower * brackets[k].upper);
    try {
      mid_amplitude[k] = scan_inplane(a, b, mid, n_angles, q).signed_amplitude;
    } catch (const std::exception&) {
    }
  });
  for (std::size_t k = 0; k < brackets.size(); ++k) {
    Kink kink = brackets[k];
    const double m = mid_amplitude[k];
    if (!std::isnan(m)) {
      const double mid = std::sqrt(kink.lower * kink.upper);
      const auto it = std::find(c.distances.begin(), c.distances.end(), kink.lower);
      const double lo_amp = c.signed_amplitude[it - c.distances.begin()];
      if ((lo_amp < 0.0) != (m < 0.0)) {
        kink.upper = mid;
      } else {
        kink.lower = mid;
      }
    }
    c.kinks.push_back(kink);
  }
  return c;
}

PowerLawFit scaling_exponent(std::span<const double> distances, std::span<const double> values,
                             double window_lo, double window_hi) {
  if (distances.size() != values.size()) {
    throw DomainError("scaling_exponent: distances and values differ in length");
  }
  std::vector<double> x, y;
  int sign = 0;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    if (distances[i] < window_lo || distances[i] > window_hi) continue;
    const double v = values[i];
    const int s = v > 0.0 ? 1 : v < 0.0 ? -1 : 0;
    if (s == 0 || (sign != 0 && s != sign)) {
      throw DomainError("scaling_exponent: values change sign inside the window");
    }
    sign = s;
    x.push_back(std::log(distances[i]));
    y.push_back(std::log(std::abs(v)));
  }
  if (x.size() < 5) throw DomainError("scaling_exponent: fewer than 5 points in the window");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  PowerLawFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.points = static_cast<int>(x.size());
  return fit;
}

double disk_force(double f_area, double radius_um) {
  if (!(radius_um >= 0.0)) throw DomainError("disk radius must be non-negative");
  const double r = radius_um * units::micrometre;
  return f_area * pi * r * r;
}

double proximity_force(double delta_e, double curvature_radius_um) {
  if (!(curvature_radius_um >= 0.0)) throw DomainError("curvature radius must be non-negative");
  return 2.0 * pi * curvature_radius_um * units::micrometre * delta_e;
}

TorqueProfile torque(const AngularScan& scan, double plate_radius_um) {
  if (!(plate_radius_um >= 0.0)) throw DomainError("plate radius must be non-negative");
  const double r = plate_radius_um * units::micrometre;
  const double area = pi * r * r;
  TorqueProfile t;
  t.angles = scan.angles;
  const std::size_t n = scan.angles.size();
  t.analytic = scan.fit_class != AngularClass::mixed;
  for (std::size_t i = 0; i < n; ++i) {
    double derivative;
    if (t.analytic) {
      derivative = scan.signed_amplitude * std::sin(2.0 * scan.angles[i]);
    } else {
      // Central difference on the periodic grid of period pi.
      const double h = pi / static_cast<double>(n);
      derivative = (scan.delta_e[(i + 1) % n] - scan.delta_e[(i + n - 1) % n]) / (2.0 * h);
    }
    t.torque.push_back(derivative * area);
    t.peak = std::max(t.peak, std::abs(t.torque.back()));
  }
  if (t.analytic) t.peak = scan.fit_amplitude * area;
  return t;
}

}  // namespace casimag
