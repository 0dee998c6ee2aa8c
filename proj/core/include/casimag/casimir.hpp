#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "casimag/reflection.hpp"

namespace casimag {

/// Integration controls. The spectral integral runs over u = 2 k_perp D in
/// (0, u_max) and t = w / (k_perp c) in (0, 1) with nested adaptive
/// Gauss-Kronrod; the incidence azimuth uses a periodic trapezoid rule.
struct QuadratureConfig {
  double rel_tol = 1e-7;
  double abs_tol = 0.0;  // in the integrand's natural units (eV/nm^2 scaled out)
  int max_subdivisions = 400;
  int phi_samples = 16;
  double u_max = 60.0;

  void validate() const;
};

struct EnergyResult {
  double value = 0.0;            // J/m^2
  double estimated_error = 0.0;  // J/m^2
  std::size_t evaluations = 0;
};

struct ForceResult {
  double value = 0.0;            // N/m^2, F = dE/dD (positive for attraction)
  double estimated_error = 0.0;  // N/m^2
  std::size_t evaluations = 0;
};

/// Energy per unit area to second order in the Kerr response:
///   E(theta) = e0 + e_perp cos^2(theta) + (e_par1 + e_par2) sin^2(theta)
struct EnergyDecomposition {
  double e0 = 0.0;      // J/m^2
  double e_perp = 0.0;  // polar
  double e_par1 = 0.0;  // longitudinal
  double e_par2 = 0.0;  // transverse
  double distance = 0.0;  // nm

  double total(double theta) const;
  /// E(theta = 0) - E(theta = pi/2).
  double anisotropy() const { return e_perp - e_par1 - e_par2; }
};

/// dE/dD of each term of EnergyDecomposition, N/m^2.
struct ForceDecomposition {
  double f0 = 0.0;
  double f_perp = 0.0;
  double f_par1 = 0.0;
  double f_par2 = 0.0;
  double distance = 0.0;

  double total(double theta) const;
  double anisotropy() const { return f_perp - f_par1 - f_par2; }
};

/// Flags separations where continuum electrodynamics is doubtful.
inline constexpr double min_trusted_distance_nm = 0.1;

/// Casimir energy per unit area between mirrors `a` and `b` at separation
/// `d_nm`, from Re Tr ln[1 - R_A R_B exp(-2 k_perp D)] integrated over the
/// imaginary frequency axis, k_perp and the incidence azimuth.
/// Throws DomainError for d <= 0 and ConvergenceError if the quadrature
/// budget runs out.
EnergyResult casimir_energy_general(const MirrorSpec& a, const MirrorSpec& b, double d_nm,
                                    const QuadratureConfig& q = {});

/// Magnetization-dependent part: E(a, b) - E(a, b with eps_xy = 0), computed
/// from the Kerr increment directly rather than as a difference.
EnergyResult casimir_magnetic_energy(const MirrorSpec& a, const MirrorSpec& b, double d_nm,
                                     const QuadratureConfig& q = {});

/// dE/dD by differentiating under the integral sign.
ForceResult casimir_force(const MirrorSpec& a, const MirrorSpec& b, double d_nm,
                          const QuadratureConfig& q = {});

ForceResult casimir_magnetic_force(const MirrorSpec& a, const MirrorSpec& b, double d_nm,
                                   const QuadratureConfig& q = {});

/// Magnetic energy for several orientations of the same ferromagnet, on one
/// shared set of quadrature nodes (so differences between orientations carry
/// no independent quadrature noise).
struct OrientationScan {
  std::vector<double> energy;  // J/m^2, one per orientation
  std::vector<double> error;   // J/m^2
  std::size_t evaluations = 0;
};

OrientationScan casimir_magnetic_energy_scan(const MirrorSpec& a, const Ferromagnet& b,
                                             std::span<const MagnetizationOrientation> orientations,
                                             double d_nm, const QuadratureConfig& q = {});

/// Second-order perturbative decomposition for an isotropic mirror facing a
/// ferromagnet (azimuth integral done analytically).
EnergyDecomposition casimir_energy_decomposed(const IsotropicMetal& a, const Ferromagnet& b,
                                              double d_nm, const QuadratureConfig& q = {});
ForceDecomposition casimir_force_decomposed(const IsotropicMetal& a, const Ferromagnet& b,
                                            double d_nm, const QuadratureConfig& q = {});

struct Decomposition {
  EnergyDecomposition energy;
  ForceDecomposition force;
};

/// Energy and force terms from a single pass over the spectral grid.
Decomposition casimir_decomposed(const IsotropicMetal& a, const Ferromagnet& b, double d_nm,
                                 const QuadratureConfig& q = {});

}  // namespace casimag
