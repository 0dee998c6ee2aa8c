#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "casimag/casimir.hpp"
#include "casimag/errors.hpp"
#include "casimag/materials.hpp"
#include "casimag/units.hpp"

using namespace casimag;

namespace {

constexpr double hc = units::hbar_c;

double ideal_energy(double d) {
  return -M_PI * M_PI * hc / (720.0 * d * d * d) * units::ev_per_nm2_to_j_per_m2;
}
double ideal_force(double d) {
  return M_PI * M_PI * hc / (240.0 * std::pow(d, 4)) * units::ev_per_nm3_to_n_per_m2;
}

// Two isotropic mirrors without any matrix algebra:
//   E = 1/(4 pi^2 (hbar c)^2) int K dK int_0^K dW sum_pol ln(1 - rA rB e^{-2KD/hbar c})
double scalar_lifshitz(const DrudeParams& a, const DrudeParams& b, double d) {
  using boost::math::quadrature::gauss_kronrod;
  auto over_w = [&](double k) {
    auto f = [&](double w) {
      const SpectralPoint p{w, k};
      const double ea = w > 0 ? drude_epsilon(a, w) : 1e300;
      const double eb = w > 0 ? drude_epsilon(b, w) : 1e300;
      const double s = std::exp(-2.0 * k * d / hc);
      const double rs = w > 0 ? fresnel_ss(p, ea) * fresnel_ss(p, eb) : 1.0;
      const double rp = w > 0 ? fresnel_pp(p, ea) * fresnel_pp(p, eb) : 1.0;
      return std::log1p(-rs * s) + std::log1p(-rp * s);
    };
    return k * gauss_kronrod<double, 61>::integrate(f, 0.0, k, 15, 1e-12);
  };
  const double k_max = 40.0 * hc / d;
  const double total = gauss_kronrod<double, 61>::integrate(over_w, 0.0, k_max, 15, 1e-11);
  return total / (4.0 * M_PI * M_PI * hc * hc) * units::ev_per_nm2_to_j_per_m2;
}

Ferromagnet scaled_iron(double lambda, MagnetizationOrientation o) {
  const auto& xy = materials::iron_epsilon_xy();
  DielectricModel scaled([lambda, xy](double w) { return lambda * xy(w); }, Provenance::composite,
                         TableKind::off_diagonal, "scaled xy");
  return {materials::iron_epsilon_xx(), scaled, o};
}

}  // namespace

TEST(Casimir, IdealMirrorsClosedForm) {
  for (double d : {100.0, 1000.0}) {
    const auto e = casimir_energy_general(IdealMirror{}, IdealMirror{}, d);
    EXPECT_NEAR(e.value / ideal_energy(d), 1.0, 1e-6) << d;
    EXPECT_GE(e.estimated_error, 0.0);
    const auto f = casimir_force(IdealMirror{}, IdealMirror{}, d);
    EXPECT_NEAR(f.value / ideal_force(d), 1.0, 1e-6) << d;
  }
}

TEST(Casimir, TransparentMirrorGivesZero) {
  const IsotropicMetal vacuum{constant_model(1.0)};
  EXPECT_EQ(casimir_energy_general(vacuum, IdealMirror{}, 50.0).value, 0.0);
}

TEST(Casimir, ScalarLifshitzOracle) {
  const DrudeParams au = materials::gold_drude();
  const IsotropicMetal m{drude_model(au)};
  QuadratureConfig q;
  q.rel_tol = 1e-9;
  for (double d : {10.0, 300.0}) {
    const double oracle = scalar_lifshitz(au, au, d);
    const double e = casimir_energy_general(m, m, d, q).value;
    EXPECT_LT(e, 0.0);
    EXPECT_NEAR(e / oracle, 1.0, 1e-6) << "D = " << d;
  }
}

TEST(Casimir, ForceMatchesFiniteDifference) {
  const MirrorSpec a = materials::gold();
  const MirrorSpec b = materials::iron({0.7, 0.2});
  for (double d : {5.0, 200.0}) {
    const double h = d / 100.0;
    const double fd = (casimir_energy_general(a, b, d + h).value -
                       casimir_energy_general(a, b, d - h).value) / (2.0 * h * 1e-9);
    const double f = casimir_force(a, b, d).value;
    EXPECT_NEAR(f / fd, 1.0, 5e-3) << "D = " << d;
  }
}

TEST(Casimir, MagneticPartMatchesDifference) {
  const MirrorSpec a = materials::gold();
  const MirrorSpec b = materials::iron({0.0, 0.0});
  QuadratureConfig q;
  q.rel_tol = 1e-9;
  q.max_subdivisions = 2000;
  const double d = 3.0;
  const double full = casimir_energy_general(a, b, d, q).value;
  const double bare = casimir_energy_general(a, without_magnetization(b), d, q).value;
  const double mag = casimir_magnetic_energy(a, b, d).value;
  EXPECT_NEAR((full - bare) / mag, 1.0, 1e-2);
}

TEST(Casimir, AzimuthalInvarianceForIsotropicPartner) {
  const MirrorSpec a = materials::gold();
  const double ref = casimir_magnetic_energy(a, materials::iron({1.0, 0.0}), 20.0).value;
  for (double phi : {0.4, 1.3, 2.9, 4.4}) {
    const double e = casimir_magnetic_energy(a, materials::iron({1.0, phi}), 20.0).value;
    EXPECT_NEAR(e / ref, 1.0, 1e-6) << phi;
  }
}

TEST(Casimir, EnergyMagnitudeDecreasesWithDistance) {
  const MirrorSpec a = materials::gold();
  const MirrorSpec b = materials::iron();
  double previous = INFINITY;
  for (double d = 1.0; d <= 5000.0; d *= 2.0) {
    const double e = std::abs(casimir_energy_general(a, b, d).value);
    EXPECT_LT(e, previous) << d;
    previous = e;
  }
}

TEST(Casimir, RejectsBadInput) {
  EXPECT_THROW(casimir_energy_general(IdealMirror{}, IdealMirror{}, 0.0), DomainError);
  EXPECT_THROW(casimir_force(IdealMirror{}, IdealMirror{}, -1.0), DomainError);
  QuadratureConfig q;
  q.phi_samples = 7;
  EXPECT_THROW(casimir_energy_general(IdealMirror{}, IdealMirror{}, 10.0, q), DomainError);
  q = {};
  q.rel_tol = 0.0;
  EXPECT_THROW(q.validate(), DomainError);
}

TEST(Casimir, ExhaustedBudgetCarriesPartialEstimate) {
  QuadratureConfig q;
  q.rel_tol = 1e-15;
  q.max_subdivisions = 2;
  try {
    casimir_energy_general(materials::gold(), materials::iron(), 10.0, q);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_LT(e.partial_value(), 0.0);
  }
}

TEST(Decomposition, VanishesWithoutOffDiagonal) {
  const auto r = casimir_energy_decomposed(materials::gold(), scaled_iron(0.0, {}), 50.0);
  EXPECT_EQ(r.e_perp, 0.0);
  EXPECT_EQ(r.e_par1, 0.0);
  EXPECT_EQ(r.e_par2, 0.0);
  EXPECT_LT(r.e0, 0.0);
}

TEST(Decomposition, BaseTermMatchesGeneralIntegrator) {
  const auto r = casimir_energy_decomposed(materials::gold(), materials::iron(), 50.0);
  const double bare =
      casimir_energy_general(materials::gold(), without_magnetization(materials::iron()), 50.0).value;
  EXPECT_NEAR(r.e0 / bare, 1.0, 1e-6);
}

TEST(Decomposition, ErrorShrinksAsFourthPower) {
  const IsotropicMetal au = materials::gold();
  const double theta = M_PI / 4;
  std::vector<double> errors;
  for (double lambda : {1.0, 0.5, 0.25}) {
    const auto fe = scaled_iron(lambda, {theta, 0.3});
    const double exact = casimir_magnetic_energy(au, fe, 30.0).value;
    const auto d = casimir_energy_decomposed(au, fe, 30.0);
    errors.push_back(std::abs(exact - (d.total(theta) - d.e0)));
  }
  EXPECT_NEAR(errors[0] / errors[1], 16.0, 1.0);
  EXPECT_NEAR(errors[1] / errors[2], 16.0, 1.0);
}

TEST(Decomposition, ForceTermsMatchFiniteDifference) {
  const IsotropicMetal au = materials::gold();
  const Ferromagnet fe = materials::iron();
  const double d = 40.0, h = 0.4;
  const auto up = casimir_energy_decomposed(au, fe, d + h);
  const auto down = casimir_energy_decomposed(au, fe, d - h);
  const auto f = casimir_force_decomposed(au, fe, d);
  auto fd = [&](double EnergyDecomposition::*m) { return (up.*m - down.*m) / (2 * h * 1e-9); };
  EXPECT_NEAR(f.f0 / fd(&EnergyDecomposition::e0), 1.0, 5e-3);
  EXPECT_NEAR(f.f_perp / fd(&EnergyDecomposition::e_perp), 1.0, 5e-3);
  EXPECT_NEAR(f.f_par1 / fd(&EnergyDecomposition::e_par1), 1.0, 5e-3);
  EXPECT_NEAR(f.f_par2 / fd(&EnergyDecomposition::e_par2), 1.0, 5e-3);
}

TEST(Decomposition, PolarTermDominatesAt100nm) {
  const auto r = casimir_energy_decomposed(materials::gold(), materials::iron(), 100.0);
  EXPECT_GT(std::abs(r.e_perp), std::abs(r.e_par1));
  EXPECT_GT(std::abs(r.e_perp), std::abs(r.e_par2));
}
