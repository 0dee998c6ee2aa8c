#include "casimag/casimir.hpp"

#include <array>
#include <cmath>
#include <string>

#include "casimag/errors.hpp"
#include "casimag/quadrature.hpp"
#include "casimag/units.hpp"

namespace casimag {

namespace {

using units::hbar_c;
using units::pi;

void require_distance(double d_nm) {
  if (!(d_nm > 0.0) || !std::isfinite(d_nm)) {
    throw DomainError("plate separation must be positive, got " + std::to_string(d_nm) + " nm");
  }
}

// Re log(1 + z), accurate for small |z|.
double re_log1p(cplx z) {
  if (std::abs(z) > 0.5) return std::log(std::abs(1.0 + z));
  const double x = z.real();
  const double y = z.imag();
  return 0.5 * std::log1p(2.0 * x + x * x + y * y);
}

// Integrand pieces for one pair of reflection matrices at one azimuth.
// With M = R_A R_B, P = det(1 - s M) = 1 - s tr M + s^2 det M, split into the
// magnetization-free P0 and the increment dP.
struct PairTerms {
  double log_base;       // Re ln P0
  double log_magnetic;   // Re ln (P / P0)
  double force_base;     // Re s d/ds ln P0
  double force_magnetic; // Re s d/ds ln (P / P0)
};

PairTerms pair_terms(const SplitReflection& a, const SplitReflection& b, double s) {
  const ReflectionMatrix m0 = a.base * b.base;
  const cplx t0 = m0.trace();
  const cplx d0 = a.base.det() * b.base.det();

  // tr and det increments from the Kerr parts, without cancellation.
  const ReflectionMatrix dm = a.base * b.delta + a.delta * b.base + a.delta * b.delta;
  const cplx dt = dm.trace();
  const cplx dda = det_increment(a.base, a.delta);
  const cplx ddb = det_increment(b.base, b.delta);
  const cplx dd = a.base.det() * ddb + dda * b.base.det() + dda * ddb;

  const cplx p0_minus_1 = -s * t0 + s * s * d0;
  const cplx p0 = 1.0 + p0_minus_1;
  const cplx dp = -s * dt + s * s * dd;

  PairTerms out;
  out.log_base = re_log1p(p0_minus_1);
  out.force_base = ((-s * t0 + 2.0 * s * s * d0) / p0).real();
  if (dp == cplx(0.0)) {
    out.log_magnetic = 0.0;
    out.force_magnetic = 0.0;
  } else {
    out.log_magnetic = re_log1p(dp / p0);
    const cplx num = (-s * dt + 2.0 * s * s * dd) * p0 + (-s * t0 + 2.0 * s * s * d0) * (s * dt - s * s * dd);
    out.force_magnetic = (num / (p0 * (p0 + dp))).real();
  }
  return out;
}

// Nested (u, t) integration. `point(p, s, out)` fills the azimuth-integrated
// integrand for every channel; channel k is weighted by u^u_power[k].
template <class PointFn>
quad::Result integrate_spectral(double d_nm, const QuadratureConfig& q,
                                std::span<const int> u_power, PointFn&& point) {
  const std::size_t dim = u_power.size();
  const double k_scale = hbar_c / (2.0 * d_nm);  // kperp_c = k_scale * u

  quad::Options inner_opt{q.rel_tol * 0.1, 0.0, q.max_subdivisions};
  quad::Options outer_opt{q.rel_tol, q.abs_tol, q.max_subdivisions};
  std::size_t evaluations = 0;
  bool inner_failed = false;

  auto outer = [&](double u, std::span<double> out) {
    const double kperp_c = k_scale * u;
    const double s = std::exp(-u);
    auto inner = [&](double tau, std::span<double> values) {
      // t = sin(pi tau / 2) smooths the sqrt(1 - t^2) edge of the Kerr terms.
      const double t = std::sin(0.5 * pi * tau);
      const double jac = 0.5 * pi * std::cos(0.5 * pi * tau);
      point(SpectralPoint{kperp_c * t, kperp_c}, s, values);
      for (double& v : values) v *= jac;
    };
    const std::array<double, 3> breaks{0.0, 0.5, 1.0};
    const auto r = quad::integrate(inner, dim, std::span<const double>(breaks), inner_opt);
    evaluations += r.evaluations;
    inner_failed = inner_failed || !r.converged;
    for (std::size_t k = 0; k < dim; ++k) out[k] = r.value[k] * std::pow(u, u_power[k]);
  };

  std::vector<double> breaks{0.0, 0.25, 1.0, 3.0, 8.0, 20.0};
  while (!breaks.empty() && breaks.back() >= q.u_max) breaks.pop_back();
  breaks.push_back(q.u_max);
  auto res = quad::integrate(outer, dim, std::span<const double>(breaks), outer_opt);
  res.evaluations = evaluations;
  if (inner_failed) res.converged = false;
  return res;
}

// Trapezoid over the incidence azimuth. Re ln det is pi-periodic in the
// azimuth for every supported mirror class (R(phi + pi) = conj R(phi)), so
// n samples on [0, pi) integrate the full circle.
template <class Fn>
void azimuth_sum(int samples, Fn&& fn) {
  const double step = pi / samples;
  const double weight = 2.0 * step;
  for (int j = 0; j < samples; ++j) fn(j * step, weight);
}

double energy_prefactor(double d_nm) {
  // hbar c / (64 pi^3 D^3) in eV/nm^2, then to J/m^2.
  return hbar_c / (64.0 * pi * pi * pi * d_nm * d_nm * d_nm) * units::ev_per_nm2_to_j_per_m2;
}

double force_prefactor(double d_nm) {
  return -hbar_c / (64.0 * pi * pi * pi * std::pow(d_nm, 4)) * units::ev_per_nm3_to_n_per_m2;
}

void check_converged(const quad::Result& r, double prefactor, const char* what) {
  if (!r.converged) {
    throw ConvergenceError(std::string(what) + ": quadrature did not converge",
                           r.value.empty() ? 0.0 : r.value[0] * prefactor,
                           r.error.empty() ? 0.0 : r.error[0] * std::abs(prefactor));
  }
}

enum Channel { base_energy, magnetic_energy, base_force, magnetic_force };

// Integrates the chosen subset of the four general channels.
quad::Result general_channels(const MirrorSpec& a, const MirrorSpec& b, double d_nm,
                              const QuadratureConfig& q, std::span<const Channel> channels) {
  std::vector<int> powers;
  for (auto c : channels) powers.push_back(c == base_energy || c == magnetic_energy ? 2 : 3);
  const bool magnetic = is_magnetic(a) || is_magnetic(b);
  auto point = [&](SpectralPoint p, double s, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    const MirrorResponse ra(a, p);
    const MirrorResponse rb(b, p);
    azimuth_sum(q.phi_samples, [&](double phi, double weight) {
      const auto terms = pair_terms(ra.at_azimuth(phi), rb.at_azimuth(phi), s);
      for (std::size_t k = 0; k < channels.size(); ++k) {
        switch (channels[k]) {
          case base_energy: out[k] += weight * terms.log_base; break;
          case magnetic_energy: out[k] += magnetic ? weight * terms.log_magnetic : 0.0; break;
          case base_force: out[k] += weight * terms.force_base; break;
          case magnetic_force: out[k] += magnetic ? weight * terms.force_magnetic : 0.0; break;
        }
      }
    });
  };
  return integrate_spectral(d_nm, q, powers, point);
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("quadrature rel_tol must be > 0");
  if (!(abs_tol >= 0.0)) throw DomainError("quadrature abs_tol must be >= 0");
  if (max_subdivisions < 1) throw DomainError("quadrature max_subdivisions must be >= 1");
  if (phi_samples < 8 || phi_samples % 2 != 0) {
    throw DomainError("phi_samples must be even and >= 8");
  }
  if (!(u_max > 1.0)) throw DomainError("u_max must exceed 1");
}

double EnergyDecomposition::total(double theta) const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return e0 + e_perp * c * c + (e_par1 + e_par2) * s * s;
}

double ForceDecomposition::total(double theta) const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return f0 + f_perp * c * c + (f_par1 + f_par2) * s * s;
}

EnergyResult casimir_energy_general(const MirrorSpec& a, const MirrorSpec& b, double d_nm,
                                    const QuadratureConfig& q) {
  require_distance(d_nm);
  q.validate();
  const std::array<Channel, 2> ch{base_energy, magnetic_energy};
  const auto r = general_channels(a, b, d_nm, q, ch);
  const double pref = energy_prefactor(d_nm);
  check_converged(r, pref, "casimir_energy_general");
  return {(r.value[0] + r.value[1]) * pref, (r.error[0] + r.error[1]) * std::abs(pref),
          r.evaluations};
}

EnergyResult casimir_magnetic_energy(const MirrorSpec& a, const MirrorSpec& b, double d_nm,
                                     const QuadratureConfig& q) {
  require_distance(d_nm);
  q.validate();
  const std::array<Channel, 1> ch{magnetic_energy};
  const auto r = general_channels(a, b, d_nm, q, ch);
  const double pref = energy_prefactor(d_nm);
  check_converged(r, pref, "casimir_magnetic_energy");
  return {r.value[0] * pref, r.error[0] * std::abs(pref), r.evaluations};
}

ForceResult casimir_force(const MirrorSpec& a, const MirrorSpec& b, double d_nm,
                          const QuadratureConfig& q) {
  require_distance(d_nm);
  q.validate();
  const std::array<Channel, 2> ch{base_force, magnetic_force};
  const auto r = general_channels(a, b, d_nm, q, ch);
  const double pref = force_prefactor(d_nm);
  check_converged(r, pref, "casimir_force");
  return {(r.value[0] + r.value[1]) * pref, (r.error[0] + r.error[1]) * std::abs(pref),
          r.evaluations};
}

ForceResult casimir_magnetic_force(const MirrorSpec& a, const MirrorSpec& b, double d_nm,
                                   const QuadratureConfig& q) {
  require_distance(d_nm);
  q.validate();
  const std::array<Channel, 1> ch{magnetic_force};
  const auto r = general_channels(a, b, d_nm, q, ch);
  const double pref = force_prefactor(d_nm);
  check_converged(r, pref, "casimir_magnetic_force");
  return {r.value[0] * pref, r.error[0] * std::abs(pref), r.evaluations};
}

OrientationScan casimir_magnetic_energy_scan(const MirrorSpec& a, const Ferromagnet& b,
                                             std::span<const MagnetizationOrientation> orientations,
                                             double d_nm, const QuadratureConfig& q) {
  require_distance(d_nm);
  q.validate();
  for (const auto& o : orientations) o.validate();
  const std::vector<int> powers(orientations.size(), 2);
  const MirrorSpec b_spec = b;
  auto point = [&](SpectralPoint p, double s, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    const MirrorResponse ra(a, p);
    const KerrCoefficients kerr = *MirrorResponse(b_spec, p).kerr();
    azimuth_sum(q.phi_samples, [&](double phi, double weight) {
      const SplitReflection ma = ra.at_azimuth(phi);
      for (std::size_t k = 0; k < orientations.size(); ++k) {
        const auto mb = kerr.matrix(orientations[k].theta, orientations[k].phi - phi);
        out[k] += weight * pair_terms(ma, mb, s).log_magnetic;
      }
    });
  };
  const auto r = integrate_spectral(d_nm, q, powers, point);
  const double pref = energy_prefactor(d_nm);
  check_converged(r, pref, "casimir_magnetic_energy_scan");
  OrientationScan scan;
  for (std::size_t k = 0; k < orientations.size(); ++k) {
    scan.energy.push_back(r.value[k] * pref);
    scan.error.push_back(r.error[k] * std::abs(pref));
  }
  scan.evaluations = r.evaluations;
  return scan;
}

Decomposition casimir_decomposed(const IsotropicMetal& a, const Ferromagnet& b, double d_nm,
                                 const QuadratureConfig& q) {
  require_distance(d_nm);
  q.validate();
  // Channels: e0, e_perp, e_par1, e_par2, then the four force terms.
  const std::array<int, 8> powers{2, 2, 2, 2, 3, 3, 3, 3};
  auto point = [&](SpectralPoint p, double s, std::span<double> out) {
    const double eps_a = a.eps_xx(p.w);
    const double as = fresnel_ss(p, eps_a);
    const double ap = fresnel_pp(p, eps_a);
    const auto k = KerrCoefficients::at(p, b.eps_xx(p.w), b.eps_xy(p.w));
    const double xs = as * k.r_ss * s;
    const double xp = ap * k.r_pp * s;
    const double qs = 1.0 - xs;
    const double qp = 1.0 - xp;
    const double s2 = s * s;

    // Azimuth-averaged second-order expansion of Re ln det.
    const double cross = as * ap * s2 / (qs * qp);
    const double perp = -cross * k.r_polar * k.r_polar;
    const double par1 = 0.5 * (cross * k.r_longitudinal * k.r_longitudinal).real();
    const double par2 =
        -0.25 * (ap * ap * s2 / (qp * qp) * k.dr_pp * k.dr_pp).real();
    const double base = std::log1p(-xs) + std::log1p(-xp);

    const double mix = 2.0 + xs / qs + xp / qp;
    out[0] = 2.0 * pi * base;
    out[1] = 2.0 * pi * perp;
    out[2] = 2.0 * pi * par1;
    out[3] = 2.0 * pi * par2;
    out[4] = 2.0 * pi * (-xs / qs - xp / qp);
    out[5] = 2.0 * pi * perp * mix;
    out[6] = 2.0 * pi * par1 * mix;
    out[7] = 2.0 * pi * par2 * (2.0 + 2.0 * xp / qp);
  };
  const auto r = integrate_spectral(d_nm, q, powers, point);
  const double pe = energy_prefactor(d_nm);
  const double pf = force_prefactor(d_nm);
  check_converged(r, pe, "casimir_decomposed");
  Decomposition out;
  out.energy = {r.value[0] * pe, r.value[1] * pe, r.value[2] * pe, r.value[3] * pe, d_nm};
  out.force = {r.value[4] * pf, r.value[5] * pf, r.value[6] * pf, r.value[7] * pf, d_nm};
  return out;
}

EnergyDecomposition casimir_energy_decomposed(const IsotropicMetal& a, const Ferromagnet& b,
                                              double d_nm, const QuadratureConfig& q) {
  return casimir_decomposed(a, b, d_nm, q).energy;
}

ForceDecomposition casimir_force_decomposed(const IsotropicMetal& a, const Ferromagnet& b,
                                            double d_nm, const QuadratureConfig& q) {
  return casimir_decomposed(a, b, d_nm, q).force;
}

}  // namespace casimag
