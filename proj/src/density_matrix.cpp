#include "tpro/density_matrix.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace tpro {

cplx DensityMatrix::element(int i, int j) const {
  if (i == j) return i == 0 ? rho11 : (i == 1 ? rho22 : rho33);
  if (i < j) return std::conj(element(j, i));
  if (i == 1) return rho21;
  return j == 0 ? rho31 : rho32;
}

double max_abs_difference(const DensityMatrix& a, const DensityMatrix& b) {
  const auto ca = a.components();
  const auto cb = b.components();
  double m = 0.0;
  for (std::size_t k = 0; k < ca.size(); ++k) m = std::max(m, std::abs(ca[k] - cb[k]));
  return m;
}

double min_eigenvalue(const DensityMatrix& rho) {
  // The characteristic-polynomial route loses half the digits near the
  // degenerate pure states the dynamics starts from; QR keeps full precision.
  Eigen::Matrix3cd m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = rho.element(i, j);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

InvariantCheck check_invariants(const DensityMatrix& rho, double trace_tol,
                                double positivity_tol) {
  InvariantCheck c;
  c.trace_error = std::abs(rho.trace() - 1.0);
  c.min_eigenvalue = min_eigenvalue(rho);
  c.ok = c.trace_error < trace_tol && c.min_eigenvalue > -positivity_tol &&
         rho.rho11 <= 1.0 + trace_tol && rho.rho22 <= 1.0 + trace_tol &&
         rho.rho33 <= 1.0 + trace_tol;
  return c;
}

}  // namespace tpro
