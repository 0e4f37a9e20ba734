#pragma once

// Gaussian driving pulse in Rabi-amplitude form,
//   Omega0(t) = A / (sqrt(pi) t0) * exp(-((t - td) / t0)^2),
// so that the time integral of Omega0 equals the area A.

#include "tpro/hybrid.hpp"

namespace tpro {

enum class CarrierMode {
  two_photon_resonance,  ///< omega0 = omega3 / 2
  explicit_frequency,
};

struct PulseParams {
  double area = 0.0;      ///< radians
  double delay_ps = 0.0;  ///< td, time of the pulse maximum
  double width_ps = 1.0;  ///< t0
  CarrierMode carrier = CarrierMode::two_photon_resonance;
  double omega0 = 0.0;  ///< rad/ps, read only for explicit_frequency

  double peak_amplitude() const;
  void validate() const;
};

/// Omega0_21(t) in rad/ps. Omega0_32 is (mu32/mu21) times this.
double rabi_amplitude_external(const PulseParams& p, double t);

/// exp(-((t - td)/t0)^2), the envelope normalized to its peak.
double pulse_envelope(const PulseParams& p, double t);

/// Full width at half maximum 2 sqrt(ln 2) t0.
double pulse_fwhm(double t0);

/// Adaptive Gauss-Kronrod integral of the Rabi amplitude over [t_lo, t_hi].
/// The window must cover td +- 6 t0, otherwise DomainError.
double numeric_area(const PulseParams& p, double t_lo, double t_hi);

/// Carrier frequency in rad/ps implied by the pulse's carrier mode.
double carrier_frequency(const SqdParams& sqd, const PulseParams& p);

/// Half-width of the default simulation window in units of t0.
inline constexpr double kWindowHalfWidth = 6.0;

}  // namespace tpro
