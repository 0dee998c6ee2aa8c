#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "casimag/dielectric.hpp"
#include "casimag/reflection.hpp"

namespace casimag::materials {

/// Directory holding the bundled optical tables. Resolution order: the
/// CASIMAG_DATA_DIR environment variable, the source tree, the install prefix.
std::filesystem::path data_directory();

DrudeParams gold_drude();
DrudeParams iron_drude();

/// Tabulated-data models (Kramers-Kronig of the bundled tables, Drude below
/// the lowest row), pre-interpolated for fast evaluation. Loaded once.
const DielectricModel& gold_epsilon();
const DielectricModel& iron_epsilon_xx();
const DielectricModel& iron_epsilon_xy();

IsotropicMetal gold();
Ferromagnet iron(MagnetizationOrientation orientation = {});

struct UniaxialParams {
  std::string name;
  TwoOscillatorParams ordinary;
  TwoOscillatorParams extraordinary;
};

/// Two-oscillator parameters for "quartz", "calcite" and "barium_titanate".
/// Throws std::out_of_range for other names.
const UniaxialParams& uniaxial(const std::string& name);
std::vector<std::string> uniaxial_names();

UniaxialPlate uniaxial_plate(const std::string& name, double zeta = 0.0);

}  // namespace casimag::materials
