#include "casimag/materials.hpp"

#include <array>
#include <cstdlib>
#include <stdexcept>

#include "casimag/errors.hpp"

#ifndef CASIMAG_DEFAULT_DATA_DIR
#define CASIMAG_DEFAULT_DATA_DIR "data"
#endif
#ifndef CASIMAG_INSTALLED_DATA_DIR
#define CASIMAG_INSTALLED_DATA_DIR "share/casimag/data"
#endif

namespace casimag::materials {

namespace {

// Line positions are quoted in 1e14 rad/s (IR) and 1e16 rad/s (UV).
constexpr double ir_unit = 0.0658211957;
constexpr double uv_unit = 6.58211957;

TwoOscillatorParams oscillators(double c_ir, double w_ir, double c_uv, double w_uv) {
  return {c_ir, c_uv, w_ir * ir_unit, w_uv * uv_unit};
}

const std::array<UniaxialParams, 3>& presets() {
  static const std::array<UniaxialParams, 3> table = {{
      {"quartz", oscillators(1.920, 2.093, 1.359, 2.032), oscillators(1.980, 2.093, 1.384, 1.960)},
      {"calcite", oscillators(5.300, 2.691, 1.683, 1.660), oscillators(6.300, 2.691, 1.182, 2.134)},
      {"barium_titanate", oscillators(3595.0, 0.850, 4.064, 0.896),
       oscillators(145.0, 0.850, 4.208, 0.876)},
  }};
  return table;
}

OpticalDataTable load(const std::string& file, TableKind kind) {
  return OpticalDataTable::read_csv((data_directory() / file).string(), kind);
}

}  // namespace

std::filesystem::path data_directory() {
  if (const char* env = std::getenv("CASIMAG_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  const std::filesystem::path source = CASIMAG_DEFAULT_DATA_DIR;
  if (std::filesystem::exists(source / "au_eps_xx.csv")) return source;
  return CASIMAG_INSTALLED_DATA_DIR;
}

DrudeParams gold_drude() { return {9.0, 0.035}; }
DrudeParams iron_drude() { return {3.54, 0.019}; }

const DielectricModel& gold_epsilon() {
  static const DielectricModel model =
      composite_metal_model(load("au_eps_xx.csv", TableKind::diagonal), gold_drude(), "Au")
          .tabulated();
  return model;
}

const DielectricModel& iron_epsilon_xx() {
  static const DielectricModel model =
      composite_metal_model(load("fe_eps_xx.csv", TableKind::diagonal), iron_drude(), "Fe xx")
          .tabulated();
  return model;
}

const DielectricModel& iron_epsilon_xy() {
  static const DielectricModel model =
      kk_offdiagonal_model(load("fe_eps_xy.csv", TableKind::off_diagonal), "Fe xy").tabulated();
  return model;
}

IsotropicMetal gold() { return {gold_epsilon()}; }

Ferromagnet iron(MagnetizationOrientation orientation) {
  return {iron_epsilon_xx(), iron_epsilon_xy(), orientation};
}

const UniaxialParams& uniaxial(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  throw std::out_of_range("unknown uniaxial material '" + name + "'");
}

std::vector<std::string> uniaxial_names() {
  std::vector<std::string> names;
  for (const auto& p : presets()) names.push_back(p.name);
  return names;
}

UniaxialPlate uniaxial_plate(const std::string& name, double zeta) {
  const auto& p = uniaxial(name);
  return {two_oscillator_model(p.ordinary, name + " o"),
          two_oscillator_model(p.extraordinary, name + " e"), UniaxialGeometry{zeta}};
}

}  // namespace casimag::materials
