#pragma once

// Rotating-frame optical Bloch equations of the ladder dot with the
// self-consistent Rabi amplitudes
//   Omega21 = ext21 + G1 rho21 + G3 rho32,
//   Omega32 = ext32 + G3 rho21 + G2 rho32,
// where ext carries the (1/eps_s') (1 + alpha/(2 pi d^3)) field prefactor.

#include <functional>
#include <utility>
#include <vector>

#include "tpro/density_matrix.hpp"
#include "tpro/hybrid.hpp"
#include "tpro/pulse.hpp"

namespace tpro {

struct Detunings {
  double delta21 = 0.0;  ///< omega2 - omega0
  double delta31 = 0.0;  ///< omega3 - 2 omega0
  double delta32 = 0.0;  ///< always delta31 - delta21

  static Detunings from_carrier(const SqdParams& sqd, const PulseParams& pulse);
};

struct RabiPair {
  cplx omega21;
  cplx omega32;
};

/// Everything the right-hand side needs; immutable and shareable.
struct DriveContext {
  Detunings detunings;
  SqdParams sqd;
  PulseParams pulse;
  FeedbackParams feedback;

  cplx field_prefactor() const { return feedback.enhancement / feedback.eps_s_eff; }

  /// Renormalized external amplitudes (ext21, ext32) at time t.
  RabiPair external(double t) const;

  /// Largest frequency scale of the problem: detunings, screened peak Rabi
  /// amplitude and |G_i|.
  double frequency_scale() const;
};

DriveContext make_drive_context(const SqdParams& sqd, const PulseParams& pulse,
                                const FeedbackParams& feedback);

RabiPair total_rabi_amplitudes(const DensityMatrix& state, cplx ext21, cplx ext32,
                               const FeedbackParams& fb);

/// Time derivative of the six density-matrix equations.
DensityMatrix rhs(const DensityMatrix& state, double t, const DriveContext& ctx);

struct EffectiveRates {
  double detuning21;  ///< Delta21 + Re(G1) Z21
  double detuning32;  ///< Delta32 + Re(G2) Z32
  double rate21;      ///< gamma21/2 - Im(G1) Z21
  double rate32;      ///< (gamma21 + gamma32)/2 - Im(G2) Z32
};

/// Population-dependent detunings and coherence decay rates produced by the
/// self-action. Diagnostic only; the integrator realizes them implicitly.
EffectiveRates effective_rates_report(const DensityMatrix& state, const DriveContext& ctx);

// ---------------------------------------------------------------------------
// Integration

enum class IntegratorMode { fixed_rk4, adaptive };

struct IntegratorControl {
  IntegratorMode mode = IntegratorMode::adaptive;
  double dt_ps = 0.0;  ///< fixed step; <= 0 picks default_fixed_step()
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double min_step_ps = 1e-12;
  long max_steps = 100'000'000;
  /// Spacing of recorded samples; <= 0 records only the end points.
  double sample_interval_ps = 0.0;
};

struct TimeSpan {
  double start;
  double end;
};

/// Default window td - 6 t0 .. td + 6 t0.
TimeSpan default_window(const PulseParams& pulse);

/// min(t0, 2 pi / w) / 200 with w the context's frequency scale (which is
/// Delta21 whenever the detuning dominates).
double default_fixed_step(const DriveContext& ctx);

/// Raised when the adaptive step collapses below the minimum step.
class StiffnessError : public NumericError {
 public:
  StiffnessError(const std::string& what, double t, double h)
      : NumericError(what), t_(t), h_(h) {}
  double time() const { return t_; }
  double step() const { return h_; }

 private:
  double t_;
  double h_;
};

/// Raised when a monitored sample leaves the physical state space.
class InvariantViolation : public NumericError {
 public:
  InvariantViolation(const std::string& what, double t, InvariantCheck check)
      : NumericError(what), t_(t), check_(check) {}
  double time() const { return t_; }
  const InvariantCheck& check() const { return check_; }

 private:
  double t_;
  InvariantCheck check_;
};

struct PropagationSummary {
  DensityMatrix final_state;
  double rho33_max = 0.0;
  double rho22_max = 0.0;
  double max_trace_error = 0.0;
  double min_eigenvalue = 1.0;  ///< over recorded samples
  long accepted_steps = 0;
  long rejected_steps = 0;
};

/// Called at every recorded sample (including both end points).
using SampleObserver = std::function<void(double t, const DensityMatrix& state)>;

/// Integrates from span.start to span.end. Samples land exactly on
/// span.start + k * sample_interval and on span.end; every sample is checked
/// against the trace and positivity tolerances and a violation throws
/// InvariantViolation.
PropagationSummary propagate(const DensityMatrix& initial, const DriveContext& ctx,
                             TimeSpan span, const IntegratorControl& control,
                             const SampleObserver& observer = {});

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<RabiPair> effective_rabi;
  PropagationSummary summary;
};

Trajectory integrate(const DensityMatrix& initial, const DriveContext& ctx, TimeSpan span,
                     const IntegratorControl& control);

}  // namespace tpro
