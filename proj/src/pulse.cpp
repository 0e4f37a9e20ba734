#include "tpro/pulse.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

#include "tpro/errors.hpp"
#include "tpro/units.hpp"

namespace tpro {

double PulseParams::peak_amplitude() const { return area / (std::sqrt(units::pi) * width_ps); }

void PulseParams::validate() const {
  if (!(width_ps > 0.0)) throw DomainError("pulse width t0 must be > 0");
  if (!(area >= 0.0)) throw DomainError("pulse area must be >= 0");
  if (carrier == CarrierMode::explicit_frequency && !(omega0 > 0.0)) {
    throw DomainError("explicit carrier frequency must be > 0");
  }
}

double pulse_envelope(const PulseParams& p, double t) {
  const double x = (t - p.delay_ps) / p.width_ps;
  return std::exp(-x * x);
}

double rabi_amplitude_external(const PulseParams& p, double t) {
  return p.peak_amplitude() * pulse_envelope(p, t);
}

double pulse_fwhm(double t0) {
  if (!(t0 > 0.0)) throw DomainError("t0 must be > 0");
  return 2.0 * std::sqrt(std::log(2.0)) * t0;
}

double numeric_area(const PulseParams& p, double t_lo, double t_hi) {
  p.validate();
  const double half = kWindowHalfWidth * p.width_ps;
  if (t_lo > p.delay_ps - half || t_hi < p.delay_ps + half) {
    throw DomainError("numeric_area: window must cover td +- 6 t0");
  }
  if (p.area == 0.0) return 0.0;
  auto f = [&](double t) { return rabi_amplitude_external(p, t); };
  // Split at the peak so the adaptive rule never straddles the whole Gaussian
  // with a single coarse panel.
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  return Rule::integrate(f, t_lo, p.delay_ps, 20, 1e-13) +
         Rule::integrate(f, p.delay_ps, t_hi, 20, 1e-13);
}

double carrier_frequency(const SqdParams& sqd, const PulseParams& p) {
  switch (p.carrier) {
    case CarrierMode::two_photon_resonance:
      return 0.5 * sqd.omega3();
    case CarrierMode::explicit_frequency:
      return p.omega0;
  }
  return 0.5 * sqd.omega3();
}

}  // namespace tpro
