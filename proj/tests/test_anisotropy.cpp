#include <cmath>

#include <gtest/gtest.h>

#include "casimag/anisotropy.hpp"
#include "casimag/errors.hpp"
#include "casimag/materials.hpp"

using namespace casimag;

namespace {

Ferromagnet in_plane_iron() { return materials::iron({M_PI / 2, 0.0}); }

}  // namespace

TEST(Fit, RecoversExactSin2) {
  std::vector<double> a, v;
  for (int i = 0; i < 16; ++i) {
    a.push_back(M_PI * i / 16);
    v.push_back(3.0 - 2.0 * std::pow(std::sin(a.back()), 2));
  }
  const auto fit = fit_sin2(a, v);
  EXPECT_NEAR(fit.amplitude, -2.0, 1e-12);
  EXPECT_NEAR(fit.offset, 3.0, 1e-12);
  EXPECT_LT(fit.residual, 1e-12);
  EXPECT_EQ(classify(fit), AngularClass::cos2);
}

TEST(Fit, FlagsMixedShapes) {
  std::vector<double> a, v;
  for (int i = 0; i < 16; ++i) {
    a.push_back(M_PI * i / 16);
    v.push_back(std::pow(std::sin(2 * a.back()), 2));
  }
  EXPECT_EQ(classify(fit_sin2(a, v)), AngularClass::mixed);
}

TEST(ScanInplane, IsotropicPlateIsFlat) {
  const auto q = materials::uniaxial("quartz");
  const UniaxialPlate iso{two_oscillator_model(q.ordinary), two_oscillator_model(q.ordinary), {0.0}};
  const auto flat = scan_inplane(iso, in_plane_iron(), 10.0, 16);
  const auto real = scan_inplane(materials::uniaxial_plate("quartz"), in_plane_iron(), 10.0, 16);
  EXPECT_LT(flat.fit_amplitude, 1e-6 * real.fit_amplitude);
}

TEST(ScanInplane, PeriodicAndSymmetric) {
  const auto plate = materials::uniaxial_plate("calcite", 0.4);
  const auto s = scan_inplane(plate, in_plane_iron(), 20.0, 16);
  EXPECT_DOUBLE_EQ(*std::min_element(s.delta_e.begin(), s.delta_e.end()), 0.0);
  // Mirror symmetry about delta_phi = 0 (and hence about pi/2).
  const std::size_t n = s.delta_e.size();
  for (std::size_t i = 1; i < n; ++i) {
    EXPECT_NEAR(s.delta_e[i], s.delta_e[n - i], 1e-6 * s.fit_amplitude) << i;
  }
  // pi-periodicity: Fe magnetization reversed gives the same energy.
  const auto rotated =
      scan_inplane(plate, materials::iron({M_PI / 2, M_PI}), 20.0, 16);
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_NEAR(s.delta_e[i], rotated.delta_e[i], 1e-6 * s.fit_amplitude);
  }
}

TEST(ScanInplane, RequiresEnoughAngles) {
  EXPECT_THROW(scan_inplane(materials::uniaxial_plate("quartz"), in_plane_iron(), 10.0, 4),
               DomainError);
}

TEST(ScanOutOfPlane, EasyAxisFollowsDominantTerm) {
  const auto far = scan_outofplane(materials::gold(), materials::iron(), 100.0);
  EXPECT_GT(far.terms.e_perp, far.terms.e_par1 + far.terms.e_par2);
  EXPECT_EQ(far.easy_axis, EasyAxis::in_plane);
  EXPECT_EQ(far.scan.fit_class, AngularClass::cos2);
  const auto near = scan_outofplane(materials::gold(), materials::iron(), 2.0);
  EXPECT_EQ(near.easy_axis, EasyAxis::perpendicular);
}

TEST(ScanOutOfPlane, FlatWithoutOffDiagonal) {
  const Ferromagnet plain{materials::iron_epsilon_xx(), constant_model(0.0, "zero"), {}};
  const auto s = scan_outofplane(materials::gold(), plain, 50.0);
  EXPECT_EQ(s.scan.fit_amplitude, 0.0);
  EXPECT_EQ(s.easy_axis, EasyAxis::none);
}

TEST(AmplitudeCurve, BracketsSignChange) {
  const std::vector<double> grid{20.0, 30.0, 45.0, 70.0, 100.0};
  const auto c = amplitude_vs_distance(materials::uniaxial_plate("barium_titanate"),
                                       in_plane_iron(), grid, 16, {}, 2);
  ASSERT_EQ(c.kinks.size(), 1u);
  const auto& k = c.kinks[0];
  EXPECT_LT(k.lower, k.upper);
  const auto lo = scan_inplane(materials::uniaxial_plate("barium_titanate"), in_plane_iron(), k.lower, 16);
  const auto hi = scan_inplane(materials::uniaxial_plate("barium_titanate"), in_plane_iron(), k.upper, 16);
  EXPECT_NE(lo.signed_amplitude < 0, hi.signed_amplitude < 0);
  EXPECT_THROW(amplitude_vs_distance(materials::uniaxial_plate("quartz"), in_plane_iron(),
                                     std::vector<double>{10.0, 5.0}),
               DomainError);
}

TEST(Exponent, IdealMirrorLaw) {
  std::vector<double> d, e;
  for (double x = 10.0; x <= 1000.0; x *= 1.5) {
    d.push_back(x);
    e.push_back(casimir_energy_general(IdealMirror{}, IdealMirror{}, x).value);
  }
  EXPECT_NEAR(scaling_exponent(d, e, 10.0, 1000.0).slope, -3.0, 0.05);
}

TEST(Exponent, RejectsSignChangeAndSparseWindows) {
  const std::vector<double> d{1, 2, 3, 4, 5, 6};
  const std::vector<double> v{1, 1, 1, -1, 1, 1};
  EXPECT_THROW(scaling_exponent(d, v, 0.5, 10.0), DomainError);
  EXPECT_THROW(scaling_exponent(d, std::vector<double>{1, 1, 1, 1, 1, 1}, 0.5, 3.5), DomainError);
}

TEST(Estimators, DiskAndProximityForce) {
  EXPECT_EQ(disk_force(1.0, 0.0), 0.0);
  EXPECT_NEAR(disk_force(2.0, 20.0) / disk_force(2.0, 10.0), 4.0, 1e-12);
  EXPECT_NEAR(disk_force(1.0, 1.0), M_PI * 1e-12, 1e-24);
  EXPECT_EQ(proximity_force(0.0, 100.0), 0.0);
  EXPECT_NEAR(proximity_force(1e-12, 200.0) / proximity_force(1e-12, 100.0), 2.0, 1e-12);
  EXPECT_THROW(disk_force(1.0, -1.0), DomainError);
}

TEST(Estimators, TorqueFromFit) {
  AngularScan s;
  for (int i = 0; i < 16; ++i) {
    s.angles.push_back(M_PI * i / 16);
    s.delta_e.push_back(2e-12 * std::pow(std::sin(s.angles.back()), 2));
  }
  s.signed_amplitude = 2e-12;
  s.fit_amplitude = 2e-12;
  s.fit_class = AngularClass::sin2;
  const auto t = torque(s, 100.0);
  EXPECT_TRUE(t.analytic);
  EXPECT_NEAR(t.peak, 2e-12 * M_PI * 1e-8, 1e-30);
  EXPECT_NEAR(std::abs(t.torque[4]), t.peak, 1e-30);  // delta_phi = pi/4
  EXPECT_NEAR(t.torque[0], 0.0, 1e-40);

  s.fit_class = AngularClass::mixed;
  const auto numeric = torque(s, 100.0);
  EXPECT_FALSE(numeric.analytic);
  EXPECT_NEAR(numeric.peak / t.peak, 1.0, 0.05);

  AngularScan zero = s;
  std::fill(zero.delta_e.begin(), zero.delta_e.end(), 0.0);
  zero.signed_amplitude = zero.fit_amplitude = 0.0;
  zero.fit_class = AngularClass::sin2;
  EXPECT_EQ(torque(zero, 100.0).peak, 0.0);
}
