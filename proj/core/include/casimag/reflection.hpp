#pragma once

#include <complex>
#include <variant>

#include "casimag/dielectric.hpp"

namespace casimag {

using cplx = std::complex<double>;

/// Imaginary-axis frequency w = hbar*omega and perpendicular wavevector
/// expressed as the energy kperp_c = hbar*c*k_perp, both in eV.
/// Propagating modes of the Lifshitz integral satisfy 0 < w < kperp_c.
struct SpectralPoint {
  double w;
  double kperp_c;

  void validate() const;
};

/// Magnetization direction: polar angle from the plate normal, azimuth from X.
struct MagnetizationOrientation {
  double theta = 0.0;
  double phi = 0.0;

  void validate() const;
  MagnetizationOrientation normalized() const;
};

/// Optical axis in the plate plane at angle zeta to the X axis.
struct UniaxialGeometry {
  double zeta = 0.0;

  double alpha() const;  // sin(zeta)
  double beta() const;   // -cos(zeta)
};

/// 2x2 reflection matrix in the (s, p) basis of the incidence plane.
/// Entries are complex: the longitudinal and transverse Kerr terms are purely
/// imaginary on the imaginary frequency axis (see kerr_longitudinal).
struct ReflectionMatrix {
  cplx ss{0.0};
  cplx sp{0.0};
  cplx ps{0.0};
  cplx pp{0.0};

  cplx trace() const { return ss + pp; }
  cplx det() const { return ss * pp - sp * ps; }

  ReflectionMatrix operator+(const ReflectionMatrix& o) const {
    return {ss + o.ss, sp + o.sp, ps + o.ps, pp + o.pp};
  }
  ReflectionMatrix operator*(const ReflectionMatrix& o) const {
    return {ss * o.ss + sp * o.ps, ss * o.sp + sp * o.pp, ps * o.ss + pp * o.ps,
            ps * o.sp + pp * o.pp};
  }
};

/// det(base + delta) - det(base), without forming the difference.
cplx det_increment(const ReflectionMatrix& base, const ReflectionMatrix& delta);

/// A mirror's reflection matrix split into its magnetization-independent
/// part and the first-order Kerr correction (zero for non-magnetic mirrors).
struct SplitReflection {
  ReflectionMatrix base;
  ReflectionMatrix delta;

  ReflectionMatrix full() const { return base + delta; }
};

// ---------------------------------------------------------------------------
// Mirror descriptions

/// Perfect conductor: r_ss = -1, r_pp = +1 at every frequency.
struct IdealMirror {};

struct IsotropicMetal {
  DielectricModel eps_xx;
};

struct Ferromagnet {
  DielectricModel eps_xx;
  DielectricModel eps_xy;
  MagnetizationOrientation orientation;
};

struct UniaxialPlate {
  DielectricModel eps_ordinary;
  DielectricModel eps_extraordinary;
  UniaxialGeometry geometry;
};

using MirrorSpec = std::variant<IdealMirror, IsotropicMetal, Ferromagnet, UniaxialPlate>;

/// Same mirror with its Kerr response switched off (eps_xy -> 0).
MirrorSpec without_magnetization(const MirrorSpec& mirror);
bool is_magnetic(const MirrorSpec& mirror);

// ---------------------------------------------------------------------------
// Coefficients

/// sqrt(w^2 (eps_xx - 1) + kperp_c^2). Throws DomainError for eps_xx < 1.
double xi(double eps_xx, SpectralPoint p);

double fresnel_ss(SpectralPoint p, double eps_xx);
double fresnel_pp(SpectralPoint p, double eps_xx);

/// Polar Kerr coefficient r_sp^perp (real).
double kerr_polar(SpectralPoint p, double eps_xx, double eps_xy);

/// Longitudinal Kerr coefficient r_sp^par. The factor sqrt(w^2 - kperp_c^2)
/// is negative under the radical on the integration domain and is taken as
/// +i sqrt(kperp_c^2 - w^2), so the result is purely imaginary.
cplx kerr_longitudinal(SpectralPoint p, double eps_xx, double eps_xy);

/// Transverse Kerr correction Delta r_pp, same branch convention.
cplx kerr_transverse(SpectralPoint p, double eps_xx, double eps_xy);

/// All five ferromagnet coefficients at one spectral point.
struct KerrCoefficients {
  double r_ss;
  double r_pp;
  double r_polar;
  cplx r_longitudinal;
  cplx dr_pp;

  static KerrCoefficients at(SpectralPoint p, double eps_xx, double eps_xy);

  /// `relative_azimuth` is the magnetization azimuth measured from the
  /// incidence-plane frame (phi - incidence azimuth).
  SplitReflection matrix(double theta, double relative_azimuth) const;
};

/// Uniaxial plate with in-plane optical axis; r_ps = -r_sp.
struct UniaxialCoefficients {
  double r_ss;
  double r_pp;
  double r_sp;

  /// `relative_zeta` is the axis angle in the incidence-plane frame.
  static UniaxialCoefficients at(SpectralPoint p, double eps_o, double eps_e, double relative_zeta);

  ReflectionMatrix matrix() const { return {r_ss, r_sp, -r_sp, r_pp}; }
};

ReflectionMatrix magnetic_reflection_matrix(const Ferromagnet& mirror, SpectralPoint p,
                                            double incidence_azimuth);
ReflectionMatrix uniaxial_reflection_matrix(const UniaxialPlate& mirror, SpectralPoint p,
                                            double incidence_azimuth);
SplitReflection reflection_matrix(const MirrorSpec& mirror, SpectralPoint p,
                                  double incidence_azimuth);

/// Frequency-dependent part of a mirror's response at one spectral point;
/// `at_azimuth` then yields the matrix for any incidence azimuth without
/// re-evaluating dielectric functions.
class MirrorResponse {
 public:
  MirrorResponse(const MirrorSpec& mirror, SpectralPoint p);

  SplitReflection at_azimuth(double incidence_azimuth) const;

  /// Ferromagnets only: the Kerr coefficients, for re-use across orientations.
  const KerrCoefficients* kerr() const;

 private:
  enum class Kind { ideal, isotropic, ferromagnet, uniaxial } kind_;
  SpectralPoint point_;
  double r_ss_ = 0.0;
  double r_pp_ = 0.0;
  KerrCoefficients kerr_{};
  MagnetizationOrientation orientation_{};
  double eps_o_ = 1.0;
  double eps_e_ = 1.0;
  double zeta_ = 0.0;
};

}  // namespace casimag
