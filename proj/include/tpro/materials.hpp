#pragma once

// Metal dielectric response and quasi-static multipole polarizabilities of a
// sphere embedded in a lossless host.

#include <complex>

namespace tpro {

using cplx = std::complex<double>;

/// Drude-like permittivity eps_inf - wp^2 / (w^2 + i*gp*w).
///
/// The default parameters are an effective gold model: the damping is
/// inflated over the free-electron value so that it absorbs the interband
/// losses of real gold near 2.3 eV. With eps_b = 2.16 it places the dipole
/// plasmon at 2.34 eV and gives |1 + alpha/(2 pi d^3)| ~ 2.2 at d = 18 nm,
/// r = 12 nm.
struct DrudeModel {
  double eps_inf = 10.10;
  double plasma_energy_eV = 9.01;
  double damping_energy_eV = 0.394;

  void validate() const;
  bool operator==(const DrudeModel&) const = default;
};

/// Polarizability of order n. `value` is expressed in nm^(2n+1) so that high
/// orders stay representable in double precision.
struct Polarizability {
  cplx value;
  int order = 1;
};

/// Relative floor on |denominator| / |eps_b| below which a polarizability is
/// treated as singular.
inline constexpr double kSingularityFloor = 1e-9;

/// omega in rad/ps. Throws DomainError for omega <= 0.
cplx metal_permittivity(const DrudeModel& model, double omega);

Polarizability dipole_polarizability(double radius_nm, cplx eps_m, double eps_b,
                                     double floor = kSingularityFloor);

Polarizability multipole_polarizability(int order, double radius_nm, cplx eps_m, double eps_b,
                                        double floor = kSingularityFloor);

/// Dimensionless shape factor (eps_m - eps_b) / (eps_m + (n+1)/n eps_b) of
/// the order-n polarizability, i.e. alpha_n / (4 pi r^(2n+1)).
cplx multipole_shape_factor(int order, cplx eps_m, double eps_b, double floor = kSingularityFloor);

/// Bisection tolerance of find_lsp_resonance, in eV.
inline constexpr double kResonanceToleranceEV = 1e-6;

/// Froehlich root Re[eps_m(w) + 2 eps_b] = 0 inside [omega_lo, omega_hi]
/// (rad/ps). Throws NotFoundError when the bracket holds no sign change.
double find_lsp_resonance(const DrudeModel& model, double eps_b, double omega_lo, double omega_hi);

/// Diagnostic companion of find_lsp_resonance: the frequency minimizing
/// Re alpha(w) over [omega_lo, omega_hi], located on a grid of `grid_points`
/// and polished with Brent's method. For a lossy metal this sits above the
/// Froehlich root; the two are reported side by side, never merged.
double argmin_re_polarizability(const DrudeModel& model, double eps_b, double omega_lo,
                                double omega_hi, int grid_points = 2001);

}  // namespace tpro
