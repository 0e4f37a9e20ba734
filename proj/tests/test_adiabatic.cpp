#include "catch_amalgamated.hpp"

#include <cmath>

#include "tpro/adiabatic.hpp"
#include "tpro/hybrid.hpp"
#include "tpro/units.hpp"

using namespace tpro;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
AdiabaticInputs inputs(double area_pi, double t0_in_dB_units, double enh = 1.0) {
  const SqdParams sqd = SqdParams::cdse_znse();
  AdiabaticInputs in;
  in.area = area_pi * units::pi;
  in.delta_B = sqd.delta_B;
  in.t0_ps = t0_in_dB_units / sqd.delta_B;
  in.mu_ratio = sqd.mu_ratio();
  in.eps_s_eff = effective_dielectric(6.0, 2.16);
  in.enhancement_mag = enh;
  return in;
}
}  // namespace

TEST_CASE("two-photon Rabi amplitude", "[adiabatic]") {
  const AdiabaticInputs in = inputs(1.0, 20.0);
  CHECK(two_photon_rabi_amplitude(0.0, in) == 0.0);
  CHECK_THAT(two_photon_rabi_amplitude(2.0, in), WithinRel(4.0 * two_photon_rabi_amplitude(1.0, in), 1e-15));
  const double w0 = 0.1 * in.delta_B;
  const double want = (2.0 / in.delta_B) * (4.0 / 3.0) * std::pow(w0 / in.eps_s_eff, 2);
  CHECK_THAT(two_photon_rabi_amplitude(w0, in), WithinRel(want, 1e-14));
}

TEST_CASE("two-photon area", "[adiabatic]") {
  CHECK(two_photon_area(inputs(0.0, 20.0)) == 0.0);
  const AdiabaticInputs in = inputs(9.0, 20.0);
  const double want = std::sqrt(2.0 / units::pi) * (4.0 / 3.0) * std::pow(9.0 * units::pi / in.eps_s_eff, 2) / 20.0;
  CHECK_THAT(two_photon_area(in), WithinRel(want, 1e-14));
}

TEST_CASE("two-photon area is the integral of the two-photon amplitude", "[adiabatic]") {
  const AdiabaticInputs in = inputs(3.0, 12.0, 2.2);
  const double t0 = in.t0_ps;
  double sum = 0.0;
  const int n = 20000;
  const double h = 16.0 * t0 / n;
  for (int k = 0; k <= n; ++k) {
    const double t = -8.0 * t0 + k * h;
    const double w0 = in.area / (std::sqrt(units::pi) * t0) * std::exp(-(t / t0) * (t / t0));
    sum += (k == 0 || k == n ? 0.5 : 1.0) * two_photon_rabi_amplitude(w0, in);
  }
  CHECK_THAT(sum * h, WithinRel(two_photon_area(in), 1e-10));
}

TEST_CASE("sin^2 law", "[adiabatic]") {
  CHECK(biexciton_population_adiabatic(0.0) == 0.0);
  CHECK_THAT(biexciton_population_adiabatic(units::pi), WithinAbs(1.0, 1e-15));
  CHECK_THAT(biexciton_population_adiabatic(2.0 * units::pi), WithinAbs(0.0, 1e-15));
}

TEST_CASE("first-maximum area", "[adiabatic]") {
  AdiabaticInputs in = inputs(0.0, 20.0);
  in.correction_prefactor = 1.0;
  SECTION("round trip through A2") {
    for (double m : {1.0, 8.0, 50.0, 900.0}) {
      AdiabaticInputs x = inputs(0.0, m, 1.7);
      x.correction_prefactor = 1.0;
      x.area = area_first_max(x);
      CHECK_THAT(two_photon_area(x), WithinRel(units::pi, 1e-12));
    }
  }
  SECTION("scales as sqrt(t0)") {
    AdiabaticInputs y = in;
    y.t0_ps *= 4.0;
    CHECK_THAT(area_first_max(y), WithinRel(2.0 * area_first_max(in), 1e-14));
  }
  SECTION("monotone in t0 and dB") {
    double prev = 0.0;
    for (double m = 1.0; m < 1000.0; m *= 1.5) {
      AdiabaticInputs y = in;
      y.t0_ps = m / in.delta_B;
      CHECK(area_first_max(y) > prev);
      prev = area_first_max(y);
    }
    AdiabaticInputs z = in;
    z.delta_B *= 1.1;
    CHECK(area_first_max(z) > area_first_max(in));
  }
  SECTION("hybrid divides by the enhancement") {
    AdiabaticInputs h = in;
    h.enhancement_mag = 2.2;
    CHECK_THAT(area_first_max(in) / area_first_max(h), WithinRel(2.2, 1e-14));
    h.enhancement_mag = 1.0;
    CHECK(area_first_max(h) == area_first_max(in));
  }
  SECTION("overlay prefactor") {
    AdiabaticInputs c = in;
    c.correction_prefactor = kOverlayCorrection;
    CHECK_THAT(area_first_max(c), WithinRel(0.62 * area_first_max(in), 1e-15));
  }
}

TEST_CASE("perturbative range flag", "[adiabatic]") {
  // Peak A/(sqrt(pi) t0) is 0.8 dB for 9 pi at t0 = 20/dB and 0.1 dB for
  // 50 pi at t0 = 900/dB; the threshold is dB/4.
  CHECK(exceeds_perturbative_range(inputs(9.0, 20.0)));
  CHECK_FALSE(exceeds_perturbative_range(inputs(50.0, 900.0)));
  CHECK(exceeds_perturbative_range(inputs(50.0, 900.0, 3.0)));
}

TEST_CASE("input validation", "[adiabatic]") {
  AdiabaticInputs in = inputs(1.0, 20.0);
  in.correction_prefactor = 1.5;
  CHECK_THROWS(in.validate());
  in.correction_prefactor = 0.62;
  in.t0_ps = 0.0;
  CHECK_THROWS(in.validate());
}
