#include "tpro/output.hpp"

#include <fmt/ostream.h>
#include "json.hpp"

#include <cmath>

#include "tpro/adiabatic.hpp"
#include "tpro/scenario.hpp"
#include "tpro/units.hpp"

namespace tpro {

namespace {

std::string_view scale_name(AxisScale s) { return s == AxisScale::log ? "log" : "linear"; }

std::string status_of(const ObservableRecord& r) {
  if (r.ok) return "ok";
  // Keep the row one CSV field wide.
  std::string s = "failed:" + r.failure;
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

void axis_meta(std::ostream& out, const char* tag, const SweepAxis& a) {
  fmt::print(out, "# {}_axis = {} {:.12g} {:.12g} {} {}\n", tag, to_string(a.name), a.lo, a.hi,
             a.n, scale_name(a.scale));
}

}  // namespace

std::string_view to_string(AxisName name) {
  switch (name) {
    case AxisName::area_pi:
      return "area_pi";
    case AxisName::t0_ps:
      return "t0_ps";
    case AxisName::d_nm:
      return "d_nm";
  }
  return "unknown";
}

void write_metadata(std::ostream& out, std::span<const MetadataLine> lines) {
  for (const auto& [k, v] : lines) fmt::print(out, "# {} = {}\n", k, v);
}

void write_sweep_csv(std::ostream& out, const SweepResult& r) {
  fmt::print(out, "# config_hash = {}\n", r.meta.config_hash);
  axis_meta(out, "x", r.x);
  axis_meta(out, "y", r.y);
  fmt::print(out, "# integrator = {}\n", r.meta.integrator);
  fmt::print(out, "# readout = {}\n", r.meta.readout_rule);
  fmt::print(out, "# points = {}\n", r.grid.size());
  fmt::print(out, "# failed_points = {}\n", r.meta.failed_points);
  fmt::print(out, "# diagnostic_points = {}\n", r.meta.diagnostic_points);
  fmt::print(out, "# diagnostic_failures = {}\n", r.meta.diagnostic_failures);
  out << kSweepColumns << '\n';
  for (const ObservableRecord& p : r.grid) {
    fmt::print(out, "{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{}\n", p.x, p.y,
               p.rho33_readout, p.rho22_readout, p.rho33_max, p.rho22_max, status_of(p));
  }
}

void write_sweep_manifest(std::ostream& out, const RunConfig& config, const SweepResult& r) {
  auto axis = [](const SweepAxis& a) {
    return nlohmann::json{{"name", to_string(a.name)},
                          {"lo", a.lo},
                          {"hi", a.hi},
                          {"n", a.n},
                          {"scale", scale_name(a.scale)}};
  };
  nlohmann::json j;
  j["config"] = serialize_config(config);
  j["config_hash"] = r.meta.config_hash;
  j["x_axis"] = axis(r.x);
  j["y_axis"] = axis(r.y);
  j["integrator"] = r.meta.integrator;
  j["readout"] = r.meta.readout_rule;
  j["points"] = r.grid.size();
  j["failed_points"] = r.meta.failed_points;
  j["diagnostic_points"] = r.meta.diagnostic_points;
  j["diagnostic_failures"] = r.meta.diagnostic_failures;
  j["workers"] = r.meta.workers;
  j["wall_time_s"] = r.meta.wall_time_s;
  out << j.dump(2) << '\n';
}

void write_dynamics_csv(std::ostream& out, const Trajectory& traj, const PulseParams& pulse) {
  out << kDynamicsColumns << '\n';
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const DensityMatrix& s = traj.states[k];
    fmt::print(out, "{:.10g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g}\n",
               traj.times[k], s.rho11, s.rho22, s.rho33, s.rho21.real(), s.rho21.imag(),
               s.rho32.real(), s.rho32.imag(), s.rho31.real(), s.rho31.imag(),
               pulse_envelope(pulse, traj.times[k]));
  }
}

std::vector<MaterialsRow> materials_spectrum(const RunConfig& config, double lo_eV, double hi_eV,
                                             int n) {
  if (n < 2 || !(hi_eV > lo_eV) || !(lo_eV > 0.0)) {
    throw std::invalid_argument("materials spectrum needs 0 < lo < hi and n >= 2");
  }
  const double r_nm = config.geometry ? config.geometry->geometry.radius_nm
                                      : HybridGeometry{}.radius_nm;
  std::vector<MaterialsRow> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double e = lo_eV + (hi_eV - lo_eV) * i / (n - 1);
    const cplx eps = metal_permittivity(config.materials.drude, units::ev_to_rad_per_ps(e));
    const Polarizability a = dipole_polarizability(r_nm, eps, config.materials.eps_b);
    rows.push_back({e, eps, a.value * units::nm3_to_m3(1.0)});
  }
  return rows;
}

void write_materials_csv(std::ostream& out, std::span<const MaterialsRow> rows) {
  out << kMaterialsColumns << '\n';
  for (const MaterialsRow& r : rows) {
    fmt::print(out, "{:.10g},{:.12g},{:.12g},{:.12g},{:.12g}\n", r.hbar_omega_eV, r.eps.real(),
               r.eps.imag(), r.alpha_m3.real(), r.alpha_m3.imag());
  }
}

std::vector<AdiabaticRow> adiabatic_curve(const RunConfig& config, std::span<const double> t0_ps) {
  const SqdParams sqd = config.sqd.to_params();
  const FeedbackParams fb = feedback_for(config);
  std::vector<AdiabaticRow> rows;
  rows.reserve(t0_ps.size());
  for (double t0 : t0_ps) {
    AdiabaticInputs in;
    in.t0_ps = t0;
    in.mu_ratio = sqd.mu_ratio();
    in.delta_B = sqd.delta_B;
    in.eps_s_eff = fb.eps_s_eff;
    in.enhancement_mag = std::abs(fb.enhancement);
    in.correction_prefactor = kOverlayCorrection;
    rows.push_back({t0, area_first_max(in)});
  }
  return rows;
}

void write_adiabatic_csv(std::ostream& out, std::span<const AdiabaticRow> rows) {
  out << kAdiabaticColumns << '\n';
  for (const AdiabaticRow& r : rows) {
    fmt::print(out, "{:.10g},{:.12g},{:.12g}\n", r.t0_ps, r.area_rad, r.area_rad / units::pi);
  }
}

void write_area_scan_csv(std::ostream& out, const RunConfig& config,
                         std::span<const AreaScanRecord> rows) {
  fmt::print(out, "# config_hash = {}\n", config_hash(config));
  fmt::print(out, "# t0_ps = {:.12g}\n", config.pulse.t0_ps);
  fmt::print(out, "# isolated = {}\n", config.isolated());
  out << kAreaScanColumns << '\n';
  for (const AreaScanRecord& r : rows) {
    const ObservableRecord& o = r.observables;
    fmt::print(out, "{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{},{}\n", r.area_pi,
               o.rho33_readout, o.rho22_readout, o.rho33_max, o.rho22_max, r.a2,
               r.rho33_adiabatic, r.perturbative_warning ? 1 : 0, status_of(o));
  }
}

}  // namespace tpro
