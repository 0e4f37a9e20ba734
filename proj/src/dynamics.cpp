#include "tpro/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tpro/units.hpp"

namespace tpro {

namespace {

constexpr cplx kI{0.0, 1.0};

}  // namespace

Detunings Detunings::from_carrier(const SqdParams& sqd, const PulseParams& pulse) {
  Detunings d;
  if (pulse.carrier == CarrierMode::two_photon_resonance) {
    // Exact values; subtracting two ~3.6e3 rad/ps carriers would cost digits.
    d.delta21 = 0.5 * sqd.delta_B;
    d.delta31 = 0.0;
  } else {
    d.delta21 = sqd.omega2 - pulse.omega0;
    d.delta31 = sqd.omega3() - 2.0 * pulse.omega0;
  }
  d.delta32 = d.delta31 - d.delta21;
  return d;
}

RabiPair DriveContext::external(double t) const {
  const cplx ext21 = field_prefactor() * rabi_amplitude_external(pulse, t);
  return {ext21, sqd.mu_ratio() * ext21};
}

double DriveContext::frequency_scale() const {
  double w = std::max({std::abs(detunings.delta21), std::abs(detunings.delta31),
                       std::abs(detunings.delta32)});
  w = std::max(w, std::abs(field_prefactor()) * pulse.peak_amplitude() *
                      std::max(1.0, sqd.mu_ratio()));
  w = std::max({w, std::abs(feedback.G1), std::abs(feedback.G2), std::abs(feedback.G3)});
  return w;
}

DriveContext make_drive_context(const SqdParams& sqd, const PulseParams& pulse,
                                const FeedbackParams& feedback) {
  sqd.validate();
  pulse.validate();
  return {Detunings::from_carrier(sqd, pulse), sqd, pulse, feedback};
}

RabiPair total_rabi_amplitudes(const DensityMatrix& s, cplx ext21, cplx ext32,
                               const FeedbackParams& fb) {
  return {ext21 + fb.G1 * s.rho21 + fb.G3 * s.rho32, ext32 + fb.G3 * s.rho21 + fb.G2 * s.rho32};
}

DensityMatrix rhs(const DensityMatrix& s, double t, const DriveContext& ctx) {
  const RabiPair ext = ctx.external(t);
  const RabiPair om = total_rabi_amplitudes(s, ext.omega21, ext.omega32, ctx.feedback);
  const cplx& o21 = om.omega21;
  const cplx& o32 = om.omega32;
  const double g21 = ctx.sqd.gamma21;
  const double g32 = ctx.sqd.gamma32;
  const Detunings& d = ctx.detunings;
  const double z21 = s.rho22 - s.rho11;
  const double z32 = s.rho33 - s.rho22;

  // i(w - w*) = -2 Im w
  const double flow21 = -2.0 * (std::conj(o21) * s.rho21).imag();  // i(O21* r21 - O21 r21*)
  const double flow32 = -2.0 * (std::conj(o32) * s.rho32).imag();  // i(O32* r32 - O32 r32*)

  DensityMatrix ds;
  ds.rho11 = g21 * s.rho22 + flow21;
  ds.rho22 = -g21 * s.rho22 + g32 * s.rho33 - flow21 + flow32;
  ds.rho33 = -g32 * s.rho33 - flow32;
  ds.rho21 = -(kI * d.delta21 + 0.5 * g21) * s.rho21 + kI * (std::conj(o32) * s.rho31 - o21 * z21);
  ds.rho32 = -(kI * d.delta32 + 0.5 * (g32 + g21)) * s.rho32 -
             kI * (std::conj(o21) * s.rho31 + o32 * z32);
  ds.rho31 = -(kI * d.delta31 + 0.5 * g32) * s.rho31 + kI * (o32 * s.rho21 - o21 * s.rho32);
  return ds;
}

EffectiveRates effective_rates_report(const DensityMatrix& s, const DriveContext& ctx) {
  const double z21 = s.rho22 - s.rho11;
  const double z32 = s.rho33 - s.rho22;
  const FeedbackParams& fb = ctx.feedback;
  return {ctx.detunings.delta21 + fb.G1.real() * z21,
          ctx.detunings.delta32 + fb.G2.real() * z32,
          0.5 * ctx.sqd.gamma21 - fb.G1.imag() * z21,
          0.5 * (ctx.sqd.gamma21 + ctx.sqd.gamma32) - fb.G2.imag() * z32};
}

TimeSpan default_window(const PulseParams& pulse) {
  const double half = kWindowHalfWidth * pulse.width_ps;
  return {pulse.delay_ps - half, pulse.delay_ps + half};
}

double default_fixed_step(const DriveContext& ctx) {
  return std::min(ctx.pulse.width_ps, 2.0 * units::pi / ctx.frequency_scale()) / 200.0;
}

// ---------------------------------------------------------------------------

namespace {

DensityMatrix rk4_step(const DensityMatrix& y, double t, double h, const DriveContext& ctx) {
  const DensityMatrix k1 = rhs(y, t, ctx);
  const DensityMatrix k2 = rhs(y + (0.5 * h) * k1, t + 0.5 * h, ctx);
  const DensityMatrix k3 = rhs(y + (0.5 * h) * k2, t + 0.5 * h, ctx);
  const DensityMatrix k4 = rhs(y + h * k3, t + h, ctx);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Dormand-Prince 5(4) tableau.
namespace dp {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace dp

struct DopriResult {
  DensityMatrix y;
  DensityMatrix k7;
  double error;
};

DopriResult dopri_step(const DensityMatrix& y, const DensityMatrix& k1, double t, double h,
                       const DriveContext& ctx, const IntegratorControl& ctl) {
  using namespace dp;
  const DensityMatrix k2 = rhs(y + (h * a21) * k1, t + c2 * h, ctx);
  const DensityMatrix k3 = rhs(y + h * (a31 * k1 + a32 * k2), t + c3 * h, ctx);
  const DensityMatrix k4 = rhs(y + h * (a41 * k1 + a42 * k2 + a43 * k3), t + c4 * h, ctx);
  const DensityMatrix k5 =
      rhs(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), t + c5 * h, ctx);
  const DensityMatrix k6 =
      rhs(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), t + h, ctx);
  DopriResult r;
  r.y = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  r.k7 = rhs(r.y, t + h, ctx);
  const DensityMatrix err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * r.k7);

  const auto ce = err.components();
  const auto c0 = y.components();
  const auto c1 = r.y.components();
  double acc = 0.0;
  for (std::size_t i = 0; i < ce.size(); ++i) {
    const double sc = ctl.abs_tol + ctl.rel_tol * std::max(std::abs(c0[i]), std::abs(c1[i]));
    acc += (ce[i] / sc) * (ce[i] / sc);
  }
  r.error = std::sqrt(acc / static_cast<double>(ce.size()));
  return r;
}

class Propagator {
 public:
  Propagator(const DriveContext& ctx, const IntegratorControl& ctl, const SampleObserver& obs)
      : ctx_(ctx), ctl_(ctl), observer_(obs) {}

  PropagationSummary run(const DensityMatrix& initial, TimeSpan span) {
    if (!(span.end > span.start)) throw DomainError("integrate: empty time span");
    if (ctl_.mode == IntegratorMode::fixed_rk4) {
      dt_ = ctl_.dt_ps > 0.0 ? ctl_.dt_ps : default_fixed_step(ctx_);
    } else {
      if (!(ctl_.rel_tol > 0.0) || !(ctl_.abs_tol > 0.0)) {
        throw DomainError("adaptive integration needs positive tolerances");
      }
      h_ = std::min(0.01 / ctx_.frequency_scale(), span.end - span.start);
      h_max_ = ctx_.pulse.width_ps;
    }
    y_ = initial;
    t_ = span.start;
    summary_ = {};
    track();
    sample();

    double next = span.start;
    while (t_ < span.end) {
      next = ctl_.sample_interval_ps > 0.0 ? next + ctl_.sample_interval_ps : span.end;
      // Snap the last sample onto the end point instead of leaving a sliver.
      if (next > span.end - 1e-9 * (span.end - span.start)) next = span.end;
      if (ctl_.mode == IntegratorMode::fixed_rk4) {
        advance_fixed(next);
      } else {
        advance_adaptive(next);
      }
      t_ = next;
      sample();
    }
    summary_.final_state = y_;
    return summary_;
  }

 private:
  void advance_fixed(double target) {
    const double len = target - t_;
    const long n = std::max(1L, static_cast<long>(std::ceil(len / dt_ - 1e-9)));
    const double h = len / static_cast<double>(n);
    const double t_begin = t_;
    for (long i = 0; i < n; ++i) {
      y_ = rk4_step(y_, t_begin + static_cast<double>(i) * h, h, ctx_);
      ++summary_.accepted_steps;
      track();
    }
    guard_steps();
  }

  void advance_adaptive(double target) {
    if (!have_k1_) {
      k1_ = rhs(y_, t_, ctx_);
      have_k1_ = true;
    }
    while (t_ < target) {
      const double remaining = target - t_;
      const bool clipped = h_ >= remaining;
      const double h = clipped ? remaining : h_;
      const DopriResult r = dopri_step(y_, k1_, t_, h, ctx_, ctl_);
      const double factor =
          r.error == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(r.error, -0.2), 0.2, 5.0);
      if (r.error <= 1.0) {
        y_ = r.y;
        k1_ = r.k7;
        t_ = clipped ? target : t_ + h;
        ++summary_.accepted_steps;
        track();
        if (!clipped) h_ = std::min(h * factor, h_max_);
      } else {
        ++summary_.rejected_steps;
        h_ = h * std::max(factor, 0.2);
        if (h_ < ctl_.min_step_ps) {
          throw StiffnessError("adaptive step underflow at t = " + std::to_string(t_) +
                                   " ps (h = " + std::to_string(h_) +
                                   ", error = " + std::to_string(r.error) + ")",
                               t_, h_);
        }
      }
      guard_steps();
    }
  }

  void guard_steps() const {
    if (summary_.accepted_steps + summary_.rejected_steps > ctl_.max_steps) {
      throw NumericError("integration exceeded max_steps");
    }
  }

  void track() {
    summary_.rho33_max = std::max(summary_.rho33_max, y_.rho33);
    summary_.rho22_max = std::max(summary_.rho22_max, y_.rho22);
  }

  void sample() {
    const InvariantCheck c = check_invariants(y_);
    summary_.max_trace_error = std::max(summary_.max_trace_error, c.trace_error);
    summary_.min_eigenvalue = std::min(summary_.min_eigenvalue, c.min_eigenvalue);
    if (!c.ok) {
      throw InvariantViolation("density matrix left the physical region at t = " +
                                   std::to_string(t_) + " ps (trace error " +
                                   std::to_string(c.trace_error) + ", min eigenvalue " +
                                   std::to_string(c.min_eigenvalue) + ")",
                               t_, c);
    }
    if (observer_) observer_(t_, y_);
  }

  const DriveContext& ctx_;
  const IntegratorControl& ctl_;
  const SampleObserver& observer_;
  DensityMatrix y_;
  DensityMatrix k1_;
  bool have_k1_ = false;
  double t_ = 0.0;
  double dt_ = 0.0;
  double h_ = 0.0;
  double h_max_ = std::numeric_limits<double>::infinity();
  PropagationSummary summary_;
};

}  // namespace

PropagationSummary propagate(const DensityMatrix& initial, const DriveContext& ctx,
                             TimeSpan span, const IntegratorControl& control,
                             const SampleObserver& observer) {
  return Propagator(ctx, control, observer).run(initial, span);
}

Trajectory integrate(const DensityMatrix& initial, const DriveContext& ctx, TimeSpan span,
                     const IntegratorControl& control) {
  Trajectory traj;
  auto record = [&](double t, const DensityMatrix& s) {
    traj.times.push_back(t);
    traj.states.push_back(s);
    const RabiPair ext = ctx.external(t);
    traj.effective_rabi.push_back(total_rabi_amplitudes(s, ext.omega21, ext.omega32, ctx.feedback));
  };
  traj.summary = propagate(initial, ctx, span, control, record);
  return traj;
}

}  // namespace tpro
