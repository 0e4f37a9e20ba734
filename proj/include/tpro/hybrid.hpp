#pragma once

// Coupling between the quantum dot and the metal sphere: dielectric screening,
// external-field enhancement and the self-action (feedback) constants G1..G3.

#include <complex>
#include <vector>

#include "tpro/errors.hpp"
#include "tpro/materials.hpp"

namespace tpro {

struct HybridGeometry {
  double radius_nm = 12.0;
  double distance_nm = 18.0;  ///< center-to-center

  /// Throws DomainError unless d > r > 0.
  void validate() const;
  bool operator==(const HybridGeometry&) const = default;
};

/// Three-level ladder (ground, one-exciton, biexciton). Frequencies in rad/ps,
/// rates in 1/ps, transition dipoles in e*nm.
struct SqdParams {
  double omega2 = 0.0;
  double delta_B = 0.0;
  double gamma21 = 0.0;
  double gamma32 = 0.0;
  double mu21 = 0.0;
  double mu32 = 0.0;
  double eps_s = 0.0;

  double omega3() const { return 2.0 * (omega2 - 0.5 * delta_B); }
  double mu_ratio() const { return mu32 / mu21; }

  void validate() const;

  /// CdSe/ZnSe dot: 2.36 eV exciton, 20 meV binding, 1/220 and 1/120 ps^-1
  /// decay, 0.6 and 0.8 e*nm dipoles, eps_s = 6.
  static SqdParams cdse_znse();
};

struct FeedbackParams {
  cplx G1;  ///< rad/ps
  cplx G2;
  cplx G3;
  cplx enhancement{1.0, 0.0};  ///< 1 + alpha(w0) / (2 pi d^3)
  double eps_s_eff = 1.0;
  int terms_used = 0;

  /// Isolated dot: no feedback, no enhancement, only dielectric screening.
  static FeedbackParams isolated(double eps_s_eff);
};

inline constexpr int kDefaultMultipoleOrders = 50;
inline constexpr double kSeriesRelativeCutoff = 1e-12;
/// The last kSeriesWindow terms together must also stay below this fraction
/// of the sum, so dropping them would not move G by more than that.
inline constexpr double kSeriesWindowCutoff = 1e-10;
inline constexpr int kSeriesWindow = 5;

/// Raised when the multipole series has not met the relative cutoff after
/// n_max terms; carries the running partial sums (nm^-3).
class ConvergenceError : public NumericError {
 public:
  ConvergenceError(const std::string& what, std::vector<cplx> partial_sums)
      : NumericError(what), partial_sums_(std::move(partial_sums)) {}
  const std::vector<cplx>& partial_sums() const { return partial_sums_; }

 private:
  std::vector<cplx> partial_sums_;
};

double effective_dielectric(double eps_s, double eps_b);

cplx enhancement_factor(const Polarizability& alpha, double distance_nm);

struct MultipoleSum {
  cplx value;  ///< sum_n (n+1)^2 alpha_n / d^(2n+4), nm^-3
  int terms = 0;
};

/// Geometric self-action series, truncated at n_max or once a term drops
/// below kSeriesRelativeCutoff of the running sum and the last kSeriesWindow
/// terms sum to less than kSeriesWindowCutoff of it.
MultipoleSum multipole_coupling_sum(const HybridGeometry& geom, cplx eps_m, double eps_b,
                                    int n_max = kDefaultMultipoleOrders);

/// G_i = mu_a mu_b / (16 pi^2 hbar eps0 eps_b eps_s') * sum, for collinear
/// dipoles, in rad/ps. omega0 is the carrier frequency in rad/ps.
FeedbackParams feedback_parameters(const HybridGeometry& geom, const SqdParams& sqd,
                                   const DrudeModel& metal, double eps_b, double omega0,
                                   int n_max = kDefaultMultipoleOrders);

}  // namespace tpro
