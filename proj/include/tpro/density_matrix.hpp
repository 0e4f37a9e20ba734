#pragma once

#include <array>
#include <complex>

namespace tpro {

using cplx = std::complex<double>;

/// Hermitian 3x3 state of the ladder; only the lower triangle is stored, so
/// Hermiticity holds by construction.
struct DensityMatrix {
  double rho11 = 1.0;
  double rho22 = 0.0;
  double rho33 = 0.0;
  cplx rho21{};
  cplx rho32{};
  cplx rho31{};

  static DensityMatrix ground() { return {}; }
  static DensityMatrix zero() { return {0.0, 0.0, 0.0, {}, {}, {}}; }

  double trace() const { return rho11 + rho22 + rho33; }

  /// Element (i, j), zero-based, of the full Hermitian matrix.
  cplx element(int i, int j) const;

  std::array<double, 9> components() const {
    return {rho11, rho22, rho33, rho21.real(), rho21.imag(), rho32.real(),
            rho32.imag(), rho31.real(), rho31.imag()};
  }

  DensityMatrix& operator+=(const DensityMatrix& o) {
    rho11 += o.rho11;
    rho22 += o.rho22;
    rho33 += o.rho33;
    rho21 += o.rho21;
    rho32 += o.rho32;
    rho31 += o.rho31;
    return *this;
  }
  DensityMatrix& operator*=(double s) {
    rho11 *= s;
    rho22 *= s;
    rho33 *= s;
    rho21 *= s;
    rho32 *= s;
    rho31 *= s;
    return *this;
  }
};

inline DensityMatrix operator+(DensityMatrix a, const DensityMatrix& b) { return a += b; }
inline DensityMatrix operator*(double s, DensityMatrix a) { return a *= s; }
inline DensityMatrix operator-(DensityMatrix a, const DensityMatrix& b) { return a += (-1.0) * b; }

/// Largest absolute difference over the nine real components.
double max_abs_difference(const DensityMatrix& a, const DensityMatrix& b);

/// Smallest eigenvalue of the assembled 3x3 Hermitian matrix.
double min_eigenvalue(const DensityMatrix& rho);

inline constexpr double kTraceTolerance = 1e-9;
inline constexpr double kPositivityTolerance = 1e-6;

struct InvariantCheck {
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
  bool ok = true;
};

InvariantCheck check_invariants(const DensityMatrix& rho, double trace_tol = kTraceTolerance,
                                double positivity_tol = kPositivityTolerance);

}  // namespace tpro
