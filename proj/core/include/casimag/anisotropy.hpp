#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "casimag/casimir.hpp"

namespace casimag {

enum class AngularClass { sin2, cos2, mixed };
const char* to_string(AngularClass c);

/// Least-squares fit of samples to offset + amplitude * sin^2(angle).
struct Sin2Fit {
  double offset = 0.0;
  double amplitude = 0.0;  // signed; negative means cos^2 behaviour
  double residual = 0.0;   // RMS misfit / |amplitude| (0 when both vanish)
};

Sin2Fit fit_sin2(std::span<const double> angles, std::span<const double> values);

/// Classification threshold on Sin2Fit::residual.
inline constexpr double mixed_residual_threshold = 0.05;

AngularClass classify(const Sin2Fit& fit);

struct AngularScan {
  double distance = 0.0;            // nm
  std::vector<double> angles;       // rad
  std::vector<double> delta_e;      // J/m^2, min = 0
  double fit_amplitude = 0.0;       // |A|, J/m^2
  double signed_amplitude = 0.0;    // A, J/m^2
  AngularClass fit_class = AngularClass::mixed;
  double fit_offset_residual = 0.0;
  double max_quadrature_error = 0.0;  // J/m^2
};

/// Energy versus the in-plane angle between the magnetization (theta = pi/2)
/// and the optical axis of `a`, sampled uniformly on [0, pi).
AngularScan scan_inplane(const UniaxialPlate& a, const Ferromagnet& b, double d_nm, int n_angles,
                         const QuadratureConfig& q = {});

enum class EasyAxis { perpendicular, in_plane, none };
const char* to_string(EasyAxis e);

struct OutOfPlaneScan {
  AngularScan scan;  // over theta
  EnergyDecomposition terms;
  EasyAxis easy_axis = EasyAxis::none;
};

/// E(theta) - E_min from the perturbative decomposition.
OutOfPlaneScan scan_outofplane(const IsotropicMetal& a, const Ferromagnet& b, double d_nm,
                               int n_angles = 16, const QuadratureConfig& q = {});

struct Kink {
  double lower = 0.0;  // nm
  double upper = 0.0;  // nm, signed amplitude changes sign in [lower, upper]
};

struct AmplitudeCurve {
  std::vector<double> distances;         // nm
  std::vector<double> signed_amplitude;  // J/m^2, NaN where the point failed
  std::vector<AngularClass> classes;
  std::vector<double> residuals;
  std::vector<std::string> failures;  // empty string for successful points
  std::vector<Kink> kinks;
};

/// scan_inplane at each distance of the sorted grid, then kink bracketing:
/// every sign change between neighbours is narrowed by one bisection step
/// (geometric midpoint).
AmplitudeCurve amplitude_vs_distance(const UniaxialPlate& a, const Ferromagnet& b,
                                     std::span<const double> d_grid, int n_angles = 16,
                                     const QuadratureConfig& q = {}, unsigned threads = 0);

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;  // log(|value|) at D = 1 nm
  int points = 0;
};

/// Least-squares slope of log|value| against log D over samples with D in
/// [window_lo, window_hi]. Needs at least five points of one sign.
PowerLawFit scaling_exponent(std::span<const double> distances, std::span<const double> values,
                             double window_lo, double window_hi);

/// f_area * pi R^2, N.
double disk_force(double f_area, double radius_um);

/// 2 pi R delta_e, N.
double proximity_force(double delta_e, double curvature_radius_um);

struct TorqueProfile {
  std::vector<double> angles;  // rad
  std::vector<double> torque;  // N m
  double peak = 0.0;           // max |torque|, N m
  bool analytic = true;        // false when the scan was classified mixed
};

/// d(delta E)/d(angle) * pi R^2 over the scan's angles.
TorqueProfile torque(const AngularScan& scan, double plate_radius_um);

}  // namespace casimag
