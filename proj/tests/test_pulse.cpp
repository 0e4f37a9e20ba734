#include "catch_amalgamated.hpp"

#include <cmath>

#include "tpro/errors.hpp"
#include "tpro/dynamics.hpp"
#include "tpro/pulse.hpp"
#include "tpro/units.hpp"

using namespace tpro;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const double kDeltaB = SqdParams::cdse_znse().delta_B;

PulseParams make(double area_pi, double t0, double td) {
  PulseParams p;
  p.area = area_pi * units::pi;
  p.width_ps = t0;
  p.delay_ps = td;
  return p;
}
}  // namespace

TEST_CASE("binding energy in angular units", "[pulse]") {
  // 20 meV is about 30 ps^-1, so t0 = 20/dB is 2/3 ps.
  CHECK_THAT(kDeltaB, WithinAbs(30.0, 0.5));
  CHECK_THAT(20.0 / kDeltaB, WithinAbs(2.0 / 3.0, 0.01));
}

TEST_CASE("Gaussian Rabi amplitude", "[pulse]") {
  const PulseParams p = make(9.0, 2.0 / 3.0, 2.0);
  CHECK_THAT(rabi_amplitude_external(p, 2.0), WithinRel(p.area / (std::sqrt(units::pi) * p.width_ps), 1e-15));
  CHECK_THAT(p.peak_amplitude() * std::sqrt(units::pi) * p.width_ps, WithinRel(p.area, 1e-15));
  CHECK_THAT(pulse_envelope(p, 2.0), WithinRel(1.0, 1e-15));
  CHECK_THAT(pulse_envelope(p, 2.0 + p.width_ps), WithinRel(std::exp(-1.0), 1e-14));
  CHECK_THAT(rabi_amplitude_external(p, 2.0 - 0.3),
             WithinRel(rabi_amplitude_external(p, 2.0 + 0.3), 1e-14));
}

TEST_CASE("peak amplitudes of the two reference pulses", "[pulse]") {
  const PulseParams short_pulse = make(9.0, 20.0 / kDeltaB, 2.0);
  CHECK_THAT(short_pulse.peak_amplitude() / kDeltaB, WithinAbs(0.8, 0.005));
  const PulseParams long_pulse = make(50.0, 900.0 / kDeltaB, 100.0);
  // Quoted values are one significant figure: exact ratios are 9 sqrt(pi)/20
  // and 50 sqrt(pi)/900.
  CHECK_THAT(long_pulse.peak_amplitude() / kDeltaB, WithinAbs(0.1, 0.005));
  CHECK_THAT(short_pulse.peak_amplitude() / kDeltaB, WithinRel(9.0 * std::sqrt(units::pi) / 20.0, 1e-14));
  CHECK_THAT(long_pulse.peak_amplitude() / kDeltaB, WithinRel(50.0 * std::sqrt(units::pi) / 900.0, 1e-14));
}

TEST_CASE("full width at half maximum", "[pulse]") {
  CHECK_THAT(pulse_fwhm(1.0), WithinAbs(1.6651, 1e-4));
  CHECK_THAT(pulse_fwhm(2.0 / 3.0), WithinAbs(1.110, 1e-3));
  CHECK_THAT(pulse_fwhm(30.0), WithinAbs(49.95, 0.01));
  const PulseParams p = make(1.0, 0.9, 0.0);
  CHECK_THAT(pulse_envelope(p, 0.5 * pulse_fwhm(0.9)), WithinRel(0.5, 1e-13));
}

TEST_CASE("quadrature recovers the area", "[pulse]") {
  for (double t0 : {0.05, 2.0 / 3.0, 1.0, 7.5, 30.0}) {
    const PulseParams p = make(9.0, t0, 3.0 * t0);
    const TimeSpan w{p.delay_ps - 6.0 * t0, p.delay_ps + 6.0 * t0};
    CHECK_THAT(numeric_area(p, w.start, w.end), WithinRel(p.area, 1e-8));
  }
  CHECK(numeric_area(make(0.0, 1.0, 0.0), -6.0, 6.0) == 0.0);
  CHECK_THROWS_AS(numeric_area(make(1.0, 1.0, 0.0), -5.0, 6.0), DomainError);
}

TEST_CASE("pulse validation", "[pulse]") {
  CHECK_THROWS_AS(make(1.0, 0.0, 0.0).validate(), DomainError);
  CHECK_THROWS_AS(make(-1.0, 1.0, 0.0).validate(), DomainError);
  CHECK_NOTHROW(make(0.0, 1.0, 0.0).validate());
}

TEST_CASE("carrier frequency", "[pulse]") {
  const SqdParams sqd = SqdParams::cdse_znse();
  PulseParams p = make(1.0, 1.0, 0.0);
  CHECK_THAT(carrier_frequency(sqd, p), WithinRel(sqd.omega3() / 2.0, 1e-15));
  p.carrier = CarrierMode::explicit_frequency;
  p.omega0 = units::ev_to_rad_per_ps(2.30);
  CHECK(carrier_frequency(sqd, p) == p.omega0);
}
