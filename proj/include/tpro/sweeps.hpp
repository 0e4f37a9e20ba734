#pragma once

// Parameter sweeps over pulse area, pulse width and dot-sphere distance.
//
// Every grid point is an independent trajectory. run_sweep() evaluates the
// grid either with the serial reference loop or with the OpenMP kernel;
// both produce identical records because a point's result depends only on
// its own configuration.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tpro/config.hpp"

namespace tpro {

enum class AxisName { area_pi, t0_ps, d_nm };
enum class AxisScale { linear, log };

struct SweepAxis {
  AxisName name = AxisName::area_pi;
  double lo = 0.0;
  double hi = 1.0;
  int n = 2;
  AxisScale scale = AxisScale::linear;

  std::vector<double> values() const;
};

struct SweepSpec {
  SweepAxis x;
  SweepAxis y;
  RunConfig fixed;

  void validate() const;
};

struct ObservableRecord {
  double x = 0.0;
  double y = 0.0;
  double rho33_readout = 0.0;
  double rho22_readout = 0.0;
  double rho33_max = 0.0;
  double rho22_max = 0.0;
  bool ok = true;
  std::string failure;  ///< reason when !ok

  bool operator==(const ObservableRecord&) const = default;
};

enum class ExecutionPolicy { serial, parallel };

struct SweepMetadata {
  std::string config_hash;
  std::string integrator;
  std::string readout_rule;
  double wall_time_s = 0.0;
  int workers = 1;
  int failed_points = 0;
  int diagnostic_points = 0;  ///< points re-run with full-trajectory checks
  int diagnostic_failures = 0;
};

struct SweepResult {
  SweepAxis x;
  SweepAxis y;
  /// Row-major in y: record (i, j) for x index i and y index j lives at
  /// j * x.n + i.
  std::vector<ObservableRecord> grid;
  SweepMetadata meta;

  const ObservableRecord& at(int i, int j) const {
    return grid[static_cast<std::size_t>(j) * static_cast<std::size_t>(x.n) +
                static_cast<std::size_t>(i)];
  }
};

/// Sets one axis quantity on a config (area in units of pi, t0 in ps, d in
/// nm). Setting d_nm on an isolated config throws std::invalid_argument.
void apply_axis(RunConfig& config, AxisName name, double value);

/// Integrates one configuration and extracts the observables. Never throws:
/// failures come back as a record with ok == false.
ObservableRecord evaluate_point(const RunConfig& config);

/// Worker count from TPRO_WORKERS, falling back to the OpenMP default.
int default_worker_count();

/// Fraction of grid points re-run with full trajectory retention.
inline constexpr double kDiagnosticFraction = 0.05;

SweepResult run_sweep(const SweepSpec& spec, ExecutionPolicy policy = ExecutionPolicy::parallel,
                      int workers = 0);

/// Axes must be (area_pi, t0_ps).
SweepResult sweep_area_duration(const SweepSpec& spec,
                                ExecutionPolicy policy = ExecutionPolicy::parallel,
                                int workers = 0);

/// Axes must be (area_pi, d_nm); the config must describe a hybrid.
SweepResult sweep_area_distance(const SweepSpec& spec,
                                ExecutionPolicy policy = ExecutionPolicy::parallel,
                                int workers = 0);

struct AreaScanRecord {
  double area_pi = 0.0;
  ObservableRecord observables;
  double a2 = 0.0;               ///< bare two-photon area
  double rho33_adiabatic = 0.0;  ///< sin^2(a2 / 2)
  bool perturbative_warning = false;
};

std::vector<AreaScanRecord> area_scan(std::span<const double> areas_pi, const RunConfig& config,
                                      ExecutionPolicy policy = ExecutionPolicy::parallel,
                                      int workers = 0);

// ---------------------------------------------------------------------------
// Curve analysis

/// Indices of local maxima whose topographic prominence is at least
/// `min_prominence`. Plateaus count once, at their first sample.
std::vector<std::size_t> prominent_maxima(std::span<const double> values, double min_prominence);

/// Abscissa of the first prominent maximum with height >= min_height.
std::optional<double> first_maximum(std::span<const double> xs, std::span<const double> ys,
                                    double min_prominence, double min_height);

/// Polishes the location of the first rho33-at-readout maximum in the area
/// bracket [lo_pi, hi_pi] with Brent's method. Returns area in units of pi.
double refine_first_maximum(const RunConfig& config, double lo_pi, double hi_pi);

}  // namespace tpro
