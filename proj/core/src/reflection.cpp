#include "casimag/reflection.hpp"

#include <cmath>
#include <string>

#include "casimag/errors.hpp"
#include "casimag/units.hpp"

namespace casimag {

void SpectralPoint::validate() const {
  if (!(kperp_c > 0.0)) throw DomainError("spectral point: kperp_c must be positive");
  if (!(w >= 0.0) || !(w <= kperp_c)) {
    throw DomainError("spectral point: need 0 <= w <= kperp_c, got w = " + std::to_string(w) +
                      ", kperp_c = " + std::to_string(kperp_c));
  }
}

void MagnetizationOrientation::validate() const {
  if (!(theta >= 0.0 && theta <= units::pi)) {
    throw DomainError("magnetization polar angle must lie in [0, pi]");
  }
  if (!std::isfinite(phi)) throw DomainError("magnetization azimuth must be finite");
}

MagnetizationOrientation MagnetizationOrientation::normalized() const {
  double p = std::fmod(phi, 2.0 * units::pi);
  if (p < 0.0) p += 2.0 * units::pi;
  return {theta, p};
}

double UniaxialGeometry::alpha() const { return std::sin(zeta); }
double UniaxialGeometry::beta() const { return -std::cos(zeta); }

cplx det_increment(const ReflectionMatrix& b, const ReflectionMatrix& d) {
  return b.ss * d.pp + d.ss * b.pp - b.sp * d.ps - d.sp * b.ps + d.det();
}

MirrorSpec without_magnetization(const MirrorSpec& mirror) {
  if (const auto* f = std::get_if<Ferromagnet>(&mirror)) return IsotropicMetal{f->eps_xx};
  return mirror;
}

bool is_magnetic(const MirrorSpec& mirror) { return std::holds_alternative<Ferromagnet>(mirror); }

// ---------------------------------------------------------------------------

double xi(double eps_xx, SpectralPoint p) {
  if (!(eps_xx >= 1.0)) {
    throw DomainError("xi: eps(i w) = " + std::to_string(eps_xx) + " < 1 is unphysical");
  }
  return std::sqrt(p.w * p.w * (eps_xx - 1.0) + p.kperp_c * p.kperp_c);
}

double fresnel_ss(SpectralPoint p, double eps_xx) {
  const double x = xi(eps_xx, p);
  return (p.kperp_c - x) / (p.kperp_c + x);
}

double fresnel_pp(SpectralPoint p, double eps_xx) {
  const double x = xi(eps_xx, p);
  return (eps_xx * p.kperp_c - x) / (eps_xx * p.kperp_c + x);
}

namespace {

// sqrt(w^2 - K^2) on the branch +i sqrt(K^2 - w^2).
cplx radical(SpectralPoint p) {
  const double r = std::sqrt(std::max(0.0, (p.kperp_c - p.w) * (p.kperp_c + p.w)));
  return {0.0, r};
}

}  // namespace

double kerr_polar(SpectralPoint p, double eps_xx, double eps_xy) {
  const double x = xi(eps_xx, p);
  const double k = p.kperp_c;
  return -k * p.w * eps_xy / ((k + x) * (eps_xx * k + x));
}

cplx kerr_longitudinal(SpectralPoint p, double eps_xx, double eps_xy) {
  const double x = xi(eps_xx, p);
  const double k = p.kperp_c;
  return -k * radical(p) * p.w * eps_xy / ((k + x) * (eps_xx * k + x) * x);
}

cplx kerr_transverse(SpectralPoint p, double eps_xx, double eps_xy) {
  const double x = xi(eps_xx, p);
  const double k = p.kperp_c;
  const double den = eps_xx * k + x;
  return 2.0 * radical(p) * eps_xy * k / (den * den);
}

KerrCoefficients KerrCoefficients::at(SpectralPoint p, double eps_xx, double eps_xy) {
  const double x = xi(eps_xx, p);
  const double k = p.kperp_c;
  const double s_den = k + x;
  const double p_den = eps_xx * k + x;
  const cplx rad = radical(p);
  KerrCoefficients c;
  c.r_ss = (k - x) / s_den;
  c.r_pp = (eps_xx * k - x) / p_den;
  c.r_polar = -k * p.w * eps_xy / (s_den * p_den);
  c.r_longitudinal = -k * rad * p.w * eps_xy / (s_den * p_den * x);
  c.dr_pp = 2.0 * rad * eps_xy * k / (p_den * p_den);
  return c;
}

SplitReflection KerrCoefficients::matrix(double theta, double relative_azimuth) const {
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const double sp = std::sin(relative_azimuth);
  const double cp = std::cos(relative_azimuth);
  SplitReflection m;
  m.base = {r_ss, 0.0, 0.0, r_pp};
  m.delta.sp = sp * st * r_longitudinal + ct * r_polar;
  m.delta.ps = -sp * st * r_longitudinal + ct * r_polar;
  m.delta.pp = cp * st * dr_pp;
  return m;
}

UniaxialCoefficients UniaxialCoefficients::at(SpectralPoint p, double eps_o, double eps_e,
                                              double relative_zeta) {
  if (!(eps_o >= 1.0) || !(eps_e >= 1.0)) {
    throw DomainError("uniaxial coefficients: eps(i w) < 1 is unphysical");
  }
  const double a = std::sin(relative_zeta);
  const double b = -std::cos(relative_zeta);
  const double k = p.kperp_c;
  const double w2 = p.w * p.w;
  const double xi_o = std::sqrt(w2 * (eps_o - 1.0) + k * k);
  const double xi_a2 = (eps_o - a * a) * w2 + a * a * k * k;
  const double xi_e = std::sqrt(xi_o * xi_o + (eps_e - eps_o) / eps_o * xi_a2);
  const double split = xi_e - xi_o;
  const double ratio = xi_o / (eps_o * k);
  const double mixed_minus = (xi_o / k) * (w2 * b * b - a * a * k * k);
  const double mixed_plus = (xi_o / k) * (w2 * b * b + a * a * k * k);

  const double denom = (k + xi_o) * (ratio + 1.0) * xi_a2 + split * (xi_a2 + mixed_plus);
  if (denom == 0.0 || !std::isfinite(denom)) {
    throw std::logic_error("uniaxial coefficients: singular geometry (D' = 0)");
  }
  UniaxialCoefficients c;
  c.r_ss = ((k - xi_o) * (ratio + 1.0) * xi_a2 - split * (xi_a2 + mixed_minus)) / denom;
  c.r_pp = (-(k + xi_o) * (ratio - 1.0) * xi_a2 + split * (xi_a2 - mixed_minus)) / denom;
  c.r_sp = 2.0 * a * b * xi_o * (xi_o - xi_e) * p.w / denom;
  return c;
}

ReflectionMatrix magnetic_reflection_matrix(const Ferromagnet& mirror, SpectralPoint p,
                                            double incidence_azimuth) {
  const auto c = KerrCoefficients::at(p, mirror.eps_xx(p.w), mirror.eps_xy(p.w));
  return c.matrix(mirror.orientation.theta, mirror.orientation.phi - incidence_azimuth).full();
}

ReflectionMatrix uniaxial_reflection_matrix(const UniaxialPlate& mirror, SpectralPoint p,
                                            double incidence_azimuth) {
  return UniaxialCoefficients::at(p, mirror.eps_ordinary(p.w), mirror.eps_extraordinary(p.w),
                                  mirror.geometry.zeta - incidence_azimuth)
      .matrix();
}

SplitReflection reflection_matrix(const MirrorSpec& mirror, SpectralPoint p,
                                  double incidence_azimuth) {
  return MirrorResponse(mirror, p).at_azimuth(incidence_azimuth);
}

// ---------------------------------------------------------------------------

MirrorResponse::MirrorResponse(const MirrorSpec& mirror, SpectralPoint p) : point_(p) {
  std::visit(
      [this, p](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, IdealMirror>) {
          kind_ = Kind::ideal;
          r_ss_ = -1.0;
          r_pp_ = 1.0;
        } else if constexpr (std::is_same_v<T, IsotropicMetal>) {
          kind_ = Kind::isotropic;
          const double eps = m.eps_xx(p.w);
          r_ss_ = fresnel_ss(p, eps);
          r_pp_ = fresnel_pp(p, eps);
        } else if constexpr (std::is_same_v<T, Ferromagnet>) {
          kind_ = Kind::ferromagnet;
          kerr_ = KerrCoefficients::at(p, m.eps_xx(p.w), m.eps_xy(p.w));
          orientation_ = m.orientation;
        } else {
          kind_ = Kind::uniaxial;
          eps_o_ = m.eps_ordinary(p.w);
          eps_e_ = m.eps_extraordinary(p.w);
          zeta_ = m.geometry.zeta;
        }
      },
      mirror);
}

SplitReflection MirrorResponse::at_azimuth(double incidence_azimuth) const {
  switch (kind_) {
    case Kind::ideal:
    case Kind::isotropic:
      return {{r_ss_, 0.0, 0.0, r_pp_}, {}};
    case Kind::ferromagnet:
      return kerr_.matrix(orientation_.theta, orientation_.phi - incidence_azimuth);
    case Kind::uniaxial:
      return {UniaxialCoefficients::at(point_, eps_o_, eps_e_, zeta_ - incidence_azimuth).matrix(),
              {}};
  }
  return {};
}

const KerrCoefficients* MirrorResponse::kerr() const {
  return kind_ == Kind::ferromagnet ? &kerr_ : nullptr;
}

}  // namespace casimag
