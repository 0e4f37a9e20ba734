#include "tpro/scenario.hpp"

#include "tpro/units.hpp"

namespace tpro {

namespace {

PulseParams pulse_for(const RunConfig& c) {
  PulseParams p;
  p.area = c.pulse.area_pi * units::pi;
  p.width_ps = c.pulse.t0_ps;
  p.delay_ps = c.pulse.delay();
  p.carrier = c.pulse.carrier;
  p.omega0 = units::ev_to_rad_per_ps(c.pulse.hbar_omega0_eV);
  return p;
}

}  // namespace

FeedbackParams feedback_for(const RunConfig& c) {
  const SqdParams sqd = c.sqd.to_params();
  if (c.isolated()) {
    return FeedbackParams::isolated(effective_dielectric(sqd.eps_s, c.materials.eps_b));
  }
  return feedback_parameters(c.geometry->geometry, sqd, c.materials.drude, c.materials.eps_b,
                             carrier_frequency(sqd, pulse_for(c)), c.geometry->n_max);
}

Scenario build_scenario(const RunConfig& c) {
  c.validate();
  Scenario s;
  s.context = make_drive_context(c.sqd.to_params(), pulse_for(c), feedback_for(c));
  const double t0 = c.pulse.t0_ps;
  const double td = c.pulse.delay();
  s.span = {td - kWindowHalfWidth * t0, td + c.integrator.readout_t0 * t0};
  s.control.mode = c.integrator.mode;
  s.control.dt_ps = c.integrator.dt_ps;
  s.control.rel_tol = c.integrator.rel_tol;
  s.control.abs_tol = c.integrator.abs_tol;
  s.control.sample_interval_ps =
      c.output.sample_interval_ps > 0.0 ? c.output.sample_interval_ps : t0 / 50.0;
  return s;
}

}  // namespace tpro
