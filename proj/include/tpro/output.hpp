#pragma once

// CSV and manifest writers. Every numeric column is printed with a fixed
// format so identical inputs give byte-identical files.

#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tpro/config.hpp"
#include "tpro/sweeps.hpp"

namespace tpro {

inline constexpr const char* kSweepColumns =
    "x_value,y_value,rho33_readout,rho22_readout,rho33_max,rho22_max,status";
inline constexpr const char* kDynamicsColumns =
    "t_ps,rho11,rho22,rho33,re_rho21,im_rho21,re_rho32,im_rho32,re_rho31,im_rho31,"
    "pulse_envelope_norm";
inline constexpr const char* kMaterialsColumns =
    "hbar_omega_eV,re_eps,im_eps,re_alpha_m3,im_alpha_m3";
inline constexpr const char* kAdiabaticColumns =
    "t0_ps,area_first_max_rad,area_first_max_pi_units";
inline constexpr const char* kAreaScanColumns =
    "area_pi,rho33_readout,rho22_readout,rho33_max,rho22_max,a2,rho33_adiabatic,"
    "perturbative_warning,status";

std::string_view to_string(AxisName name);

using MetadataLine = std::pair<std::string, std::string>;

/// "# key = value" lines. Readers skip lines starting with '#'.
void write_metadata(std::ostream& out, std::span<const MetadataLine> lines);

/// "# key = value" metadata lines, then the column header and one row per
/// grid point (x fastest). Wall time is kept out so reruns compare equal.
void write_sweep_csv(std::ostream& out, const SweepResult& result);

/// JSON manifest: canonical config text, hash, axes, metadata incl. wall time.
void write_sweep_manifest(std::ostream& out, const RunConfig& config, const SweepResult& result);

void write_dynamics_csv(std::ostream& out, const Trajectory& traj, const PulseParams& pulse);

struct MaterialsRow {
  double hbar_omega_eV;
  cplx eps;
  cplx alpha_m3;
};
std::vector<MaterialsRow> materials_spectrum(const RunConfig& config, double lo_eV, double hi_eV,
                                             int n);
void write_materials_csv(std::ostream& out, std::span<const MaterialsRow> rows);

struct AdiabaticRow {
  double t0_ps;
  double area_rad;
};
/// Corrected first-maximum area over a t0 grid for the given config.
std::vector<AdiabaticRow> adiabatic_curve(const RunConfig& config, std::span<const double> t0_ps);
void write_adiabatic_csv(std::ostream& out, std::span<const AdiabaticRow> rows);

void write_area_scan_csv(std::ostream& out, const RunConfig& config,
                         std::span<const AreaScanRecord> rows);

}  // namespace tpro
