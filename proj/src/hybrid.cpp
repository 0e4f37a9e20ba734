#include "tpro/hybrid.hpp"

#include <cmath>
#include <string>

#include "tpro/units.hpp"

namespace tpro {

void HybridGeometry::validate() const {
  if (!(radius_nm > 0.0)) throw DomainError("radius_nm must be > 0");
  if (!(distance_nm > radius_nm)) throw DomainError("distance_nm must exceed radius_nm");
}

void SqdParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw DomainError(std::string(name) + " must be > 0");
  };
  positive(omega2, "omega2");
  positive(delta_B, "delta_B");
  positive(gamma21, "gamma21");
  positive(gamma32, "gamma32");
  positive(mu21, "mu21");
  positive(mu32, "mu32");
  positive(eps_s, "eps_s");
}

SqdParams SqdParams::cdse_znse() {
  SqdParams p;
  p.omega2 = units::ev_to_rad_per_ps(2.36);
  p.delta_B = units::mev_to_rad_per_ps(20.0);
  p.gamma21 = 1.0 / 220.0;
  p.gamma32 = 1.0 / 120.0;
  p.mu21 = 0.6;
  p.mu32 = 0.8;
  p.eps_s = 6.0;
  return p;
}

FeedbackParams FeedbackParams::isolated(double eps_s_eff) {
  FeedbackParams fb;
  fb.eps_s_eff = eps_s_eff;
  return fb;
}

double effective_dielectric(double eps_s, double eps_b) {
  if (!(eps_s > 0.0) || !(eps_b > 0.0)) throw DomainError("permittivities must be > 0");
  return (eps_s + 2.0 * eps_b) / (3.0 * eps_b);
}

cplx enhancement_factor(const Polarizability& alpha, double distance_nm) {
  if (alpha.order != 1) throw DomainError("enhancement_factor needs the dipole polarizability");
  if (!(distance_nm > 0.0)) throw DomainError("distance must be > 0");
  return 1.0 + alpha.value / (2.0 * units::pi * std::pow(distance_nm, 3));
}

MultipoleSum multipole_coupling_sum(const HybridGeometry& geom, cplx eps_m, double eps_b,
                                    int n_max) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  geom.validate();
  // alpha_n / d^(2n+4) = 4 pi (r/d)^(2n+1) shape_n / d^3; the ratio form
  // avoids overflow of r^(2n+1) and d^(2n+4) at large n.
  const double ratio = geom.radius_nm / geom.distance_nm;
  const double ratio2 = ratio * ratio;
  const double scale = 4.0 * units::pi / std::pow(geom.distance_nm, 3);
  double power = ratio * ratio2;  // (r/d)^(2n+1)
  cplx sum{0.0, 0.0};
  std::vector<cplx> partial;
  partial.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const double weight = static_cast<double>((n + 1) * (n + 1));
    const cplx term = scale * weight * power * multipole_shape_factor(n, eps_m, eps_b);
    sum += term;
    partial.push_back(sum);
    const bool small_term = std::abs(term) < kSeriesRelativeCutoff * std::abs(sum);
    const bool small_window =
        n > kSeriesWindow &&
        std::abs(sum - partial[static_cast<std::size_t>(n - 1 - kSeriesWindow)]) <
            kSeriesWindowCutoff * std::abs(sum);
    if (small_term && small_window) return {sum, n};
    power *= ratio2;
  }
  throw ConvergenceError("multipole series not converged after " + std::to_string(n_max) +
                             " terms",
                         std::move(partial));
}

FeedbackParams feedback_parameters(const HybridGeometry& geom, const SqdParams& sqd,
                                   const DrudeModel& metal, double eps_b, double omega0,
                                   int n_max) {
  const cplx eps_m = metal_permittivity(metal, omega0);
  const MultipoleSum series = multipole_coupling_sum(geom, eps_m, eps_b, n_max);

  FeedbackParams fb;
  fb.eps_s_eff = effective_dielectric(sqd.eps_s, eps_b);
  fb.enhancement = enhancement_factor(dipole_polarizability(geom.radius_nm, eps_m, eps_b),
                                      geom.distance_nm);
  fb.terms_used = series.terms;

  const double sum_scale = 1.0 / std::pow(units::nm_to_m, 3);  // nm^-3 -> m^-3
  const double denom = 16.0 * units::pi * units::pi * units::hbar_J_s *
                       units::vacuum_permittivity_F_per_m * eps_b * fb.eps_s_eff;
  const cplx per_dipole2 = series.value * (sum_scale / denom * units::per_s_to_per_ps);
  const double mu21 = units::e_nm_to_C_m(sqd.mu21);
  const double mu32 = units::e_nm_to_C_m(sqd.mu32);
  fb.G1 = mu21 * mu21 * per_dipole2;
  fb.G2 = mu32 * mu32 * per_dipole2;
  fb.G3 = mu21 * mu32 * per_dipole2;
  return fb;
}

}  // namespace tpro
