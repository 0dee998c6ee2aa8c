#pragma once

// Internal unit system: energies and frequencies in eV (hbar*omega, k*c*hbar),
// lengths in nm. Conversion to SI happens only at result boundaries.

namespace casimag::units {

inline constexpr double pi = 3.14159265358979323846;

/// hbar * c in eV nm.
inline constexpr double hbar_c = 197.3269804;

/// hbar in eV s.
inline constexpr double hbar_ev_s = 6.582119569e-16;

/// 1 eV/nm^2 expressed in J/m^2.
inline constexpr double ev_per_nm2_to_j_per_m2 = 0.1602176634;

/// 1 eV/nm^3 expressed in N/m^2 (= J/m^3).
inline constexpr double ev_per_nm3_to_n_per_m2 = 0.1602176634e9;

inline constexpr double micrometre = 1e-6;  // m

/// Angular frequency in rad/s to photon energy in eV.
constexpr double rad_per_s_to_ev(double w) { return w * hbar_ev_s; }

}  // namespace casimag::units
