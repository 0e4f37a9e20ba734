#include "tpro/sweeps.hpp"

#include <boost/math/tools/minima.hpp>
#include <fmt/format.h>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "tpro/adiabatic.hpp"
#include "tpro/errors.hpp"
#include "tpro/scenario.hpp"
#include "tpro/units.hpp"

namespace tpro {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic 5% subset of grid indices, seeded by the config hash.
std::vector<std::size_t> diagnostic_indices(std::size_t total, const std::string& hash) {
  const std::uint64_t seed = std::stoull(hash, nullptr, 16);
  std::vector<std::size_t> picked;
  for (std::size_t k = 0; k < total; ++k) {
    const double u = static_cast<double>(splitmix64(seed ^ k) >> 11) * 0x1.0p-53;
    if (u < kDiagnosticFraction) picked.push_back(k);
  }
  if (picked.empty() && total > 0) picked.push_back(splitmix64(seed) % total);
  return picked;
}

std::vector<ObservableRecord> evaluate_serial(const std::vector<RunConfig>& configs) {
  std::vector<ObservableRecord> out(configs.size());
  for (std::size_t k = 0; k < configs.size(); ++k) out[k] = evaluate_point(configs[k]);
  return out;
}

std::vector<ObservableRecord> evaluate_parallel(const std::vector<RunConfig>& configs,
                                                int workers) {
  std::vector<ObservableRecord> out(configs.size());
  const long total = static_cast<long>(configs.size());
  // Trajectory cost varies by orders of magnitude across a grid (t0 spans
  // 1 to 900 / dB), hence dynamic scheduling with unit chunks.
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (long k = 0; k < total; ++k) {
    out[static_cast<std::size_t>(k)] = evaluate_point(configs[static_cast<std::size_t>(k)]);
  }
  return out;
}

std::vector<ObservableRecord> evaluate(const std::vector<RunConfig>& configs,
                                       ExecutionPolicy policy, int workers) {
  return policy == ExecutionPolicy::serial ? evaluate_serial(configs)
                                           : evaluate_parallel(configs, workers);
}

std::string describe_integrator(const RunConfig& c) {
  if (c.integrator.mode == IntegratorMode::fixed_rk4) {
    return c.integrator.dt_ps > 0.0 ? fmt::format("rk4 dt_ps={:g}", c.integrator.dt_ps)
                                    : std::string("rk4 dt=min(t0,2pi/w)/200");
  }
  return fmt::format("dopri5 rel_tol={:g} abs_tol={:g}", c.integrator.rel_tol,
                     c.integrator.abs_tol);
}

}  // namespace

std::vector<double> SweepAxis::values() const {
  if (n < 2) throw std::invalid_argument("sweep axis needs n >= 2");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / (n - 1);
    v[static_cast<std::size_t>(i)] =
        scale == AxisScale::linear ? lo + f * (hi - lo) : lo * std::pow(hi / lo, f);
  }
  return v;
}

void SweepSpec::validate() const {
  for (const SweepAxis* a : {&x, &y}) {
    if (a->n < 2) throw std::invalid_argument("sweep axis needs n >= 2");
    if (a->scale == AxisScale::log && !(a->lo > 0.0 && a->hi > 0.0)) {
      throw std::invalid_argument("log axis needs positive bounds");
    }
    if (a->name == AxisName::d_nm && fixed.isolated()) {
      throw std::invalid_argument("a distance axis needs a hybrid configuration");
    }
  }
  if (x.name == y.name) throw std::invalid_argument("sweep axes must differ");
  fixed.validate();
}

void apply_axis(RunConfig& c, AxisName name, double value) {
  switch (name) {
    case AxisName::area_pi:
      c.pulse.area_pi = value;
      break;
    case AxisName::t0_ps:
      c.pulse.t0_ps = value;
      break;
    case AxisName::d_nm:
      if (c.isolated()) throw std::invalid_argument("cannot set d_nm on an isolated dot");
      c.geometry->geometry.distance_nm = value;
      break;
  }
}

ObservableRecord evaluate_point(const RunConfig& config) {
  ObservableRecord r;
  try {
    Scenario s = build_scenario(config);
    // Invariants are monitored every half pulse width; the diagnostic re-runs
    // check at the full output resolution.
    s.control.sample_interval_ps = 0.5 * config.pulse.t0_ps;
    const PropagationSummary sum = propagate(DensityMatrix::ground(), s.context, s.span, s.control);
    r.rho33_readout = sum.final_state.rho33;
    r.rho22_readout = sum.final_state.rho22;
    r.rho33_max = sum.rho33_max;
    r.rho22_max = sum.rho22_max;
  } catch (const std::exception& e) {
    r.ok = false;
    r.failure = e.what();
    r.rho33_readout = r.rho22_readout = r.rho33_max = r.rho22_max = std::nan("");
  }
  return r;
}

int default_worker_count() {
  if (const char* env = std::getenv("TPRO_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

SweepResult run_sweep(const SweepSpec& spec, ExecutionPolicy policy, int workers) {
  spec.validate();
  if (workers <= 0) workers = default_worker_count();
  const auto start = std::chrono::steady_clock::now();

  const std::vector<double> xs = spec.x.values();
  const std::vector<double> ys = spec.y.values();
  std::vector<RunConfig> configs;
  configs.reserve(xs.size() * ys.size());
  for (double yv : ys) {
    for (double xv : xs) {
      RunConfig c = spec.fixed;
      apply_axis(c, spec.x.name, xv);
      apply_axis(c, spec.y.name, yv);
      configs.push_back(std::move(c));
    }
  }

  SweepResult result;
  result.x = spec.x;
  result.y = spec.y;
  result.grid = evaluate(configs, policy, workers);
  for (std::size_t k = 0; k < configs.size(); ++k) {
    result.grid[k].x = xs[k % xs.size()];
    result.grid[k].y = ys[k / xs.size()];
  }

  SweepMetadata& meta = result.meta;
  meta.config_hash = config_hash(spec.fixed);
  meta.integrator = describe_integrator(spec.fixed);
  meta.readout_rule = fmt::format("td + {:g} * t0", spec.fixed.integrator.readout_t0);
  meta.workers = policy == ExecutionPolicy::serial ? 1 : workers;
  meta.failed_points = static_cast<int>(
      std::count_if(result.grid.begin(), result.grid.end(), [](const auto& r) { return !r.ok; }));

  for (std::size_t k : diagnostic_indices(configs.size(), meta.config_hash)) {
    if (!result.grid[k].ok) continue;
    ++meta.diagnostic_points;
    try {
      const Scenario s = build_scenario(configs[k]);
      const Trajectory traj = integrate(DensityMatrix::ground(), s.context, s.span, s.control);
      (void)traj;
    } catch (const std::exception&) {
      ++meta.diagnostic_failures;
    }
  }

  meta.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SweepResult sweep_area_duration(const SweepSpec& spec, ExecutionPolicy policy, int workers) {
  if (spec.x.name != AxisName::area_pi || spec.y.name != AxisName::t0_ps) {
    throw std::invalid_argument("sweep_area_duration needs axes (area_pi, t0_ps)");
  }
  return run_sweep(spec, policy, workers);
}

SweepResult sweep_area_distance(const SweepSpec& spec, ExecutionPolicy policy, int workers) {
  if (spec.x.name != AxisName::area_pi || spec.y.name != AxisName::d_nm) {
    throw std::invalid_argument("sweep_area_distance needs axes (area_pi, d_nm)");
  }
  return run_sweep(spec, policy, workers);
}

std::vector<AreaScanRecord> area_scan(std::span<const double> areas_pi, const RunConfig& config,
                                      ExecutionPolicy policy, int workers) {
  config.validate();
  if (workers <= 0) workers = default_worker_count();
  std::vector<RunConfig> configs;
  configs.reserve(areas_pi.size());
  for (double a : areas_pi) {
    RunConfig c = config;
    apply_axis(c, AxisName::area_pi, a);
    configs.push_back(std::move(c));
  }
  const std::vector<ObservableRecord> obs = evaluate(configs, policy, workers);

  const SqdParams sqd = config.sqd.to_params();
  const FeedbackParams fb = feedback_for(config);
  std::vector<AreaScanRecord> out;
  out.reserve(areas_pi.size());
  for (std::size_t k = 0; k < areas_pi.size(); ++k) {
    AreaScanRecord r;
    r.area_pi = areas_pi[k];
    r.observables = obs[k];
    r.observables.x = areas_pi[k];
    AdiabaticInputs in;
    in.area = areas_pi[k] * units::pi;
    in.t0_ps = config.pulse.t0_ps;
    in.mu_ratio = sqd.mu_ratio();
    in.delta_B = sqd.delta_B;
    in.eps_s_eff = fb.eps_s_eff;
    in.enhancement_mag = std::abs(fb.enhancement);
    in.correction_prefactor = 1.0;
    r.a2 = two_photon_area(in);
    r.rho33_adiabatic = biexciton_population_adiabatic(r.a2);
    r.perturbative_warning = exceeds_perturbative_range(in);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> prominent_maxima(std::span<const double> v, double min_prominence) {
  std::vector<std::size_t> peaks;
  const std::size_t n = v.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    if (!(v[i] > v[i - 1])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && v[j + 1] == v[i]) ++j;
    if (j + 1 >= n || !(v[j + 1] < v[i])) {
      i = j + 1;
      continue;
    }
    double left_min = v[i];
    for (std::size_t k = i; k-- > 0;) {
      if (v[k] > v[i]) break;
      left_min = std::min(left_min, v[k]);
    }
    double right_min = v[i];
    for (std::size_t k = j + 1; k < n; ++k) {
      if (v[k] > v[i]) break;
      right_min = std::min(right_min, v[k]);
    }
    if (v[i] - std::max(left_min, right_min) >= min_prominence) peaks.push_back(i);
    i = j + 1;
  }
  return peaks;
}

std::optional<double> first_maximum(std::span<const double> xs, std::span<const double> ys,
                                    double min_prominence, double min_height) {
  if (xs.size() != ys.size()) throw std::invalid_argument("first_maximum: size mismatch");
  for (std::size_t idx : prominent_maxima(ys, min_prominence)) {
    if (ys[idx] >= min_height) return xs[idx];
  }
  return std::nullopt;
}

double refine_first_maximum(const RunConfig& config, double lo_pi, double hi_pi) {
  auto negative_rho33 = [&](double area_pi) {
    RunConfig c = config;
    c.pulse.area_pi = area_pi;
    const ObservableRecord r = evaluate_point(c);
    if (!r.ok) throw NumericError("refine_first_maximum: " + r.failure);
    return -r.rho33_readout;
  };
  return boost::math::tools::brent_find_minima(negative_rho33, lo_pi, hi_pi, 24).first;
}

}  // namespace tpro
