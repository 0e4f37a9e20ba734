#pragma once

// Unit policy: geometry in nm, energies in eV at interfaces, dynamics in
// angular frequency rad/ps and time in ps. Every conversion goes through here.

#include <numbers>

namespace tpro::units {

inline constexpr double pi = std::numbers::pi;

/// Reduced Planck constant in eV*ps (0.6582 meV*ps).
inline constexpr double hbar_eV_ps = 6.582119569e-4;
inline constexpr double hbar_J_s = 1.054571817e-34;
inline constexpr double elementary_charge_C = 1.602176634e-19;
inline constexpr double vacuum_permittivity_F_per_m = 8.8541878128e-12;

inline constexpr double nm_to_m = 1e-9;
inline constexpr double per_s_to_per_ps = 1e-12;

constexpr double ev_to_rad_per_ps(double energy_eV) { return energy_eV / hbar_eV_ps; }
constexpr double rad_per_ps_to_ev(double omega) { return omega * hbar_eV_ps; }
constexpr double mev_to_rad_per_ps(double energy_meV) { return ev_to_rad_per_ps(energy_meV * 1e-3); }
constexpr double rad_per_ps_to_mev(double omega) { return rad_per_ps_to_ev(omega) * 1e3; }

/// Dipole moment e*nm -> C*m.
constexpr double e_nm_to_C_m(double mu) { return mu * elementary_charge_C * nm_to_m; }

/// Volume nm^3 -> m^3.
constexpr double nm3_to_m3(double v) { return v * 1e-27; }

}  // namespace tpro::units
