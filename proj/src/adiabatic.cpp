#include "tpro/adiabatic.hpp"

#include <cmath>

#include "tpro/errors.hpp"
#include "tpro/units.hpp"

namespace tpro {

void AdiabaticInputs::validate() const {
  if (!(area >= 0.0)) throw DomainError("adiabatic: area must be >= 0");
  if (!(t0_ps > 0.0) || !(mu_ratio > 0.0) || !(delta_B > 0.0) || !(eps_s_eff > 0.0) ||
      !(enhancement_mag > 0.0)) {
    throw DomainError("adiabatic: inputs must be positive");
  }
  if (!(correction_prefactor > 0.0 && correction_prefactor <= 1.0)) {
    throw DomainError("adiabatic: correction prefactor must lie in (0, 1]");
  }
}

double two_photon_rabi_amplitude(double omega0_envelope, const AdiabaticInputs& in) {
  const double screened = in.enhancement_mag * omega0_envelope / in.eps_s_eff;
  return 2.0 / in.delta_B * in.mu_ratio * screened * screened;
}

double two_photon_area(const AdiabaticInputs& in) {
  in.validate();
  const double screened = in.enhancement_mag * in.area / in.eps_s_eff;
  return std::sqrt(2.0 / units::pi) * in.mu_ratio * screened * screened / (in.delta_B * in.t0_ps);
}

double biexciton_population_adiabatic(double a2) {
  const double s = std::sin(0.5 * a2);
  return s * s;
}

double area_first_max(const AdiabaticInputs& in) {
  in.validate();
  const double inner =
      units::pi * std::sqrt(units::pi / 2.0) / in.mu_ratio * in.delta_B * in.t0_ps;
  return in.correction_prefactor * in.eps_s_eff / in.enhancement_mag * std::sqrt(inner);
}

bool exceeds_perturbative_range(const AdiabaticInputs& in) {
  const double peak = in.enhancement_mag * in.area / (std::sqrt(units::pi) * in.t0_ps);
  return peak > 0.5 * (0.5 * in.delta_B);
}

}  // namespace tpro
