#include "tpro/materials.hpp"

#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <string>

#include "tpro/errors.hpp"
#include "tpro/units.hpp"

namespace tpro {

void DrudeModel::validate() const {
  if (!(plasma_energy_eV > 0.0)) throw DomainError("plasma_energy must be > 0");
  if (!(damping_energy_eV >= 0.0)) throw DomainError("damping_energy must be >= 0");
  if (!(eps_inf >= 1.0)) throw DomainError("eps_inf must be >= 1");
}

cplx metal_permittivity(const DrudeModel& model, double omega) {
  if (!(omega > 0.0)) throw DomainError("metal_permittivity: omega must be > 0");
  const double wp = units::ev_to_rad_per_ps(model.plasma_energy_eV);
  const double gp = units::ev_to_rad_per_ps(model.damping_energy_eV);
  return model.eps_inf - wp * wp / cplx(omega * omega, gp * omega);
}

cplx multipole_shape_factor(int order, cplx eps_m, double eps_b, double floor) {
  if (order < 1) throw DomainError("multipole order must be >= 1");
  if (!(eps_b > 0.0)) throw DomainError("eps_b must be > 0");
  const double n = order;
  const cplx den = eps_m + (n + 1.0) / n * eps_b;
  if (std::abs(den) < floor * eps_b) {
    throw SingularityError("polarizability denominator vanishes at order " +
                           std::to_string(order));
  }
  return (eps_m - eps_b) / den;
}

Polarizability multipole_polarizability(int order, double radius_nm, cplx eps_m, double eps_b,
                                        double floor) {
  if (!(radius_nm > 0.0)) throw DomainError("radius must be > 0");
  const cplx shape = multipole_shape_factor(order, eps_m, eps_b, floor);
  return {4.0 * units::pi * std::pow(radius_nm, 2 * order + 1) * shape, order};
}

Polarizability dipole_polarizability(double radius_nm, cplx eps_m, double eps_b, double floor) {
  return multipole_polarizability(1, radius_nm, eps_m, eps_b, floor);
}

double find_lsp_resonance(const DrudeModel& model, double eps_b, double omega_lo,
                          double omega_hi) {
  if (!(omega_lo > 0.0) || !(omega_hi > omega_lo)) {
    throw DomainError("find_lsp_resonance: need 0 < omega_lo < omega_hi");
  }
  auto f = [&](double w) { return metal_permittivity(model, w).real() + 2.0 * eps_b; };
  double lo = omega_lo, hi = omega_hi;
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    throw NotFoundError("no Froehlich root inside the frequency bracket");
  }
  const double tol = units::ev_to_rad_per_ps(kResonanceToleranceEV);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double argmin_re_polarizability(const DrudeModel& model, double eps_b, double omega_lo,
                                double omega_hi, int grid_points) {
  if (grid_points < 3) throw DomainError("argmin_re_polarizability: need >= 3 grid points");
  auto re_shape = [&](double w) {
    return multipole_shape_factor(1, metal_permittivity(model, w), eps_b).real();
  };
  const double step = (omega_hi - omega_lo) / (grid_points - 1);
  int best = 0;
  double best_val = re_shape(omega_lo);
  for (int i = 1; i < grid_points; ++i) {
    const double v = re_shape(omega_lo + i * step);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double a = omega_lo + std::max(best - 1, 0) * step;
  const double b = omega_lo + std::min(best + 1, grid_points - 1) * step;
  return boost::math::tools::brent_find_minima(re_shape, a, b, 40).first;
}

}  // namespace tpro
