#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/ostream.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "tpro/adiabatic.hpp"
#include "tpro/errors.hpp"
#include "tpro/output.hpp"
#include "tpro/scenario.hpp"
#include "tpro/sweeps.hpp"
#include "tpro/units.hpp"

namespace tpro {

namespace {

namespace fs = std::filesystem;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Overrides {
  std::string config_path;
  std::optional<double> area_pi;
  std::optional<double> t0_ps;
  std::optional<double> td_ps;
  std::optional<double> d_nm;
  bool isolated = false;
  std::string integrator;
  std::string output_dir;
  std::string out_file;
  int workers = 0;
  bool serial = false;
};

struct AxisFlags {
  double lo;
  double hi;
  int n;
  std::string scale = "linear";
};

RunConfig load_config(const Overrides& o) {
  RunConfig c = o.config_path.empty() ? RunConfig{} : parse_config_file(o.config_path);
  if (o.isolated) {
    if (o.d_nm) throw ConfigError(ConfigErrorKind::conflict, "isolated", "--isolated conflicts with --d-nm");
    c.geometry.reset();
  }
  if (o.d_nm) {
    if (c.isolated()) {
      throw ConfigError(ConfigErrorKind::conflict, "distance_nm",
                        "--d-nm given but the config describes an isolated dot");
    }
    c.geometry->geometry.distance_nm = *o.d_nm;
  }
  if (o.area_pi) c.pulse.area_pi = *o.area_pi;
  if (o.t0_ps) c.pulse.t0_ps = *o.t0_ps;
  if (o.td_ps) c.pulse.td_ps = *o.td_ps;
  if (o.integrator == "rk4") c.integrator.mode = IntegratorMode::fixed_rk4;
  if (o.integrator == "adaptive") c.integrator.mode = IntegratorMode::adaptive;
  if (!o.output_dir.empty()) c.output.directory = o.output_dir;
  c.validate();
  return c;
}

fs::path output_path(const RunConfig& c, const Overrides& o, const std::string& name) {
  const fs::path p = o.out_file.empty() ? fs::path(c.output.directory) / name : fs::path(o.out_file);
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    if (ec) throw IoError("cannot create " + p.parent_path().string() + ": " + ec.message());
  }
  return p;
}

template <typename Fn>
void write_file(const fs::path& p, Fn&& body) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw IoError("cannot open " + p.string() + " for writing");
  body(f);
  f.flush();
  if (!f) throw IoError("write failed for " + p.string());
}

AxisScale parse_scale(const std::string& s) {
  return s == "log" ? AxisScale::log : AxisScale::linear;
}

std::vector<MetadataLine> common_meta(const RunConfig& c) {
  return {{"config_hash", config_hash(c)},
          {"isolated", c.isolated() ? "true" : "false"},
          {"integrator", std::string(to_string(c.integrator.mode))}};
}

ExecutionPolicy policy_of(const Overrides& o) {
  return o.serial ? ExecutionPolicy::serial : ExecutionPolicy::parallel;
}

int finish_sweep(const RunConfig& c, const Overrides& o, const SweepResult& r,
                 const std::string& name, std::ostream& out, std::ostream& err) {
  const fs::path csv = output_path(c, o, name + ".csv");
  write_file(csv, [&](std::ostream& f) { write_sweep_csv(f, r); });
  fs::path manifest = csv;
  manifest.replace_extension(".json");
  write_file(manifest, [&](std::ostream& f) { write_sweep_manifest(f, c, r); });
  fmt::print(out, "{} points, {} failed, {:.2f} s on {} workers -> {}\n", r.grid.size(),
             r.meta.failed_points, r.meta.wall_time_s, r.meta.workers, csv.string());
  if (r.meta.diagnostic_failures > 0) {
    fmt::print(err, "warning: {} of {} diagnostic re-runs violated invariants\n",
               r.meta.diagnostic_failures, r.meta.diagnostic_points);
  }
  return r.meta.failed_points > 0 ? kExitPartialSweep : kExitOk;
}

int cmd_dynamics(const Overrides& o, std::ostream& out) {
  const RunConfig c = load_config(o);
  const Scenario s = build_scenario(c);
  const Trajectory traj = integrate(DensityMatrix::ground(), s.context, s.span, s.control);
  const fs::path p = output_path(c, o, "dynamics.csv");
  write_file(p, [&](std::ostream& f) {
    auto meta = common_meta(c);
    meta.emplace_back("area_pi", fmt::format("{:.12g}", c.pulse.area_pi));
    meta.emplace_back("t0_ps", fmt::format("{:.12g}", c.pulse.t0_ps));
    meta.emplace_back("td_ps", fmt::format("{:.12g}", c.pulse.delay()));
    write_metadata(f, meta);
    write_dynamics_csv(f, traj, s.context.pulse);
  });
  fmt::print(out, "{} samples, rho33 max {:.6f}, final rho22 {:.6f} -> {}\n", traj.times.size(),
             traj.summary.rho33_max, traj.summary.final_state.rho22, p.string());
  return kExitOk;
}

int cmd_sweep_area_duration(const Overrides& o, const AxisFlags& area, const AxisFlags& t0,
                            std::ostream& out, std::ostream& err) {
  SweepSpec spec;
  spec.fixed = load_config(o);
  spec.x = {AxisName::area_pi, area.lo, area.hi, area.n, parse_scale(area.scale)};
  spec.y = {AxisName::t0_ps, t0.lo, t0.hi, t0.n, parse_scale(t0.scale)};
  const SweepResult r = sweep_area_duration(spec, policy_of(o), o.workers);
  return finish_sweep(spec.fixed, o, r, "sweep_area_duration", out, err);
}

int cmd_sweep_area_distance(const Overrides& o, const AxisFlags& area, const AxisFlags& d,
                            std::ostream& out, std::ostream& err) {
  SweepSpec spec;
  spec.fixed = load_config(o);
  if (spec.fixed.isolated()) {
    throw ConfigError(ConfigErrorKind::conflict, "isolated",
                      "sweep-area-distance needs a hybrid configuration");
  }
  spec.x = {AxisName::area_pi, area.lo, area.hi, area.n, parse_scale(area.scale)};
  spec.y = {AxisName::d_nm, d.lo, d.hi, d.n, parse_scale(d.scale)};
  const SweepResult r = sweep_area_distance(spec, policy_of(o), o.workers);
  return finish_sweep(spec.fixed, o, r, "sweep_area_distance", out, err);
}

int cmd_area_scan(const Overrides& o, const AxisFlags& area, std::ostream& out,
                  std::ostream& err) {
  const RunConfig c = load_config(o);
  SweepAxis axis{AxisName::area_pi, area.lo, area.hi, area.n, parse_scale(area.scale)};
  const std::vector<double> areas = axis.values();
  const auto rows = area_scan(areas, c, policy_of(o), o.workers);
  const fs::path p = output_path(c, o, "area_scan.csv");
  write_file(p, [&](std::ostream& f) { write_area_scan_csv(f, c, rows); });
  int failed = 0;
  bool warned = false;
  for (const auto& r : rows) {
    failed += r.observables.ok ? 0 : 1;
    warned = warned || r.perturbative_warning;
  }
  if (warned) {
    fmt::print(err, "warning: peak Rabi amplitude exceeds dB/4 for part of the scan; "
                    "the sin^2 overlay is outside its perturbative range there\n");
  }
  fmt::print(out, "{} areas, {} failed -> {}\n", rows.size(), failed, p.string());
  return failed > 0 ? kExitPartialSweep : kExitOk;
}

int cmd_adiabatic(const Overrides& o, const AxisFlags& t0, std::ostream& out) {
  RunConfig hybrid = load_config(o);
  if (hybrid.isolated()) hybrid.geometry = GeometrySection{};
  RunConfig isolated = hybrid;
  isolated.geometry.reset();
  SweepAxis axis{AxisName::t0_ps, t0.lo, t0.hi, t0.n, parse_scale(t0.scale)};
  const std::vector<double> t0s = axis.values();
  Overrides single = o;
  single.out_file.clear();
  for (const RunConfig* c : {&isolated, &hybrid}) {
    const std::string name = c->isolated() ? "adiabatic_isolated.csv" : "adiabatic_hybrid.csv";
    const fs::path p = output_path(*c, single, name);
    const auto rows = adiabatic_curve(*c, t0s);
    write_file(p, [&](std::ostream& f) {
      auto meta = common_meta(*c);
      meta.emplace_back("correction_prefactor", fmt::format("{:.12g}", kOverlayCorrection));
      write_metadata(f, meta);
      write_adiabatic_csv(f, rows);
    });
    fmt::print(out, "{}\n", p.string());
  }
  return kExitOk;
}

int cmd_materials(const Overrides& o, double lo, double hi, int n, std::ostream& out) {
  const RunConfig c = load_config(o);
  const auto rows = materials_spectrum(c, lo, hi, n);
  const fs::path p = output_path(c, o, "materials.csv");
  write_file(p, [&](std::ostream& f) {
    write_metadata(f, common_meta(c));
    write_materials_csv(f, rows);
  });
  const double lsp = find_lsp_resonance(c.materials.drude, c.materials.eps_b,
                                        units::ev_to_rad_per_ps(lo), units::ev_to_rad_per_ps(hi));
  fmt::print(out, "LSP resonance {:.6f} eV -> {}\n", units::rad_per_ps_to_ev(lsp), p.string());
  return kExitOk;
}

int cmd_hybrid_info(const Overrides& o, std::ostream& out) {
  const RunConfig c = load_config(o);
  if (c.isolated()) {
    throw ConfigError(ConfigErrorKind::conflict, "isolated", "hybrid-info needs a geometry");
  }
  const FeedbackParams fb = feedback_for(c);
  const auto& g = c.geometry->geometry;
  fmt::print(out, "config_hash      {}\n", config_hash(c));
  fmt::print(out, "radius_nm        {:.6g}\n", g.radius_nm);
  fmt::print(out, "distance_nm      {:.6g}\n", g.distance_nm);
  fmt::print(out, "eps_s_eff        {:.10g}\n", fb.eps_s_eff);
  fmt::print(out, "enhancement      {:.10g} {:+.10g}i  |.| = {:.10g}\n", fb.enhancement.real(),
             fb.enhancement.imag(), std::abs(fb.enhancement));
  fmt::print(out, "multipole_terms  {}\n", fb.terms_used);
  const std::pair<const char*, cplx> gs[] = {{"G1", fb.G1}, {"G2", fb.G2}, {"G3", fb.G3}};
  for (const auto& [name, v] : gs) {
    fmt::print(out, "{}  {:+.6e} {:+.6e}i rad/ps   {:+.6f} {:+.6f}i meV   |hbar G| = {:.6f} meV\n",
               name, v.real(), v.imag(), units::rad_per_ps_to_mev(v.real()),
               units::rad_per_ps_to_mev(v.imag()), units::rad_per_ps_to_mev(std::abs(v)));
  }
  return kExitOk;
}

void add_axis(CLI::App* app, const std::string& prefix, AxisFlags& a, const std::string& unit) {
  app->add_option("--" + prefix + "-lo", a.lo, "lower bound (" + unit + ")")->capture_default_str();
  app->add_option("--" + prefix + "-hi", a.hi, "upper bound (" + unit + ")")->capture_default_str();
  app->add_option("--" + prefix + "-n", a.n, "number of points")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  app->add_option("--" + prefix + "-scale", a.scale, "linear or log")
      ->check(CLI::IsMember({"linear", "log"}))
      ->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-photon Rabi oscillations of a quantum dot next to a metal nanosphere"};
  app.require_subcommand(1);

  Overrides o;
  app.add_option("--config", o.config_path, "INI run configuration");
  app.add_option("--area-pi", o.area_pi, "pulse area in units of pi");
  app.add_option("--t0-ps", o.t0_ps, "pulse width t0 in ps");
  app.add_option("--td-ps", o.td_ps, "pulse delay in ps");
  app.add_option("--d-nm", o.d_nm, "center-to-center distance in nm");
  app.add_flag("--isolated", o.isolated, "drop the nanosphere");
  app.add_option("--integrator", o.integrator, "rk4 or adaptive")
      ->check(CLI::IsMember({"rk4", "adaptive"}));
  app.add_option("--output-dir", o.output_dir, "directory for output files");
  app.add_option("--out", o.out_file, "output file (single-file subcommands)");
  app.add_option("--workers", o.workers, "sweep workers (default: TPRO_WORKERS or all cores)");
  app.add_flag("--serial", o.serial, "use the serial reference sweep loop");

  const double dB = units::mev_to_rad_per_ps(SqdSection{}.hbar_delta_B_meV);
  AxisFlags area{0.0, 12.0, 121};
  AxisFlags t0{1.0 / dB, 50.0 / dB, 50};
  AxisFlags dist{18.0, 40.0, 23};
  double mat_lo = 1.5, mat_hi = 3.5;
  int mat_n = 401;

  auto* dyn = app.add_subcommand("dynamics", "time series of the density matrix");
  auto* sad = app.add_subcommand("sweep-area-duration", "area x pulse-width grid");
  add_axis(sad, "area", area, "pi");
  add_axis(sad, "t0", t0, "ps");
  auto* sdd = app.add_subcommand("sweep-area-distance", "area x distance grid");
  add_axis(sdd, "area", area, "pi");
  add_axis(sdd, "d", dist, "nm");
  auto* scan = app.add_subcommand("area-scan", "populations vs area with the sin^2 overlay");
  add_axis(scan, "area", area, "pi");
  auto* adi = app.add_subcommand("adiabatic", "first-maximum overlay curves");
  add_axis(adi, "t0", t0, "ps");
  auto* mat = app.add_subcommand("materials", "gold permittivity and dipole polarizability");
  mat->add_option("--lo-ev", mat_lo)->capture_default_str();
  mat->add_option("--hi-ev", mat_hi)->capture_default_str();
  mat->add_option("--n", mat_n)->check(CLI::Range(2, 1000000))->capture_default_str();
  auto* info = app.add_subcommand("hybrid-info", "effective dielectric, enhancement and G");
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (dyn->parsed()) return cmd_dynamics(o, out);
    if (sad->parsed()) return cmd_sweep_area_duration(o, area, t0, out, err);
    if (sdd->parsed()) return cmd_sweep_area_distance(o, area, dist, out, err);
    if (scan->parsed()) return cmd_area_scan(o, area, out, err);
    if (adi->parsed()) return cmd_adiabatic(o, t0, out);
    if (mat->parsed()) return cmd_materials(o, mat_lo, mat_hi, mat_n, out);
    if (info->parsed()) return cmd_hybrid_info(o, out);
  } catch (const ConfigError& e) {
    err << "config error [" << e.key() << "]: " << e.what() << "\n";
    return e.exit_code();
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  }
  err << app.help();
  return kExitUsage;
}

int run_cli(int argc, const char* const* argv) { return run_cli(argc, argv, std::cout, std::cerr); }

}  // namespace tpro
