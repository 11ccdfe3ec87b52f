#pragma once

// Shared fixtures and independent oracles for the unit tests.

#include <cmath>
#include <vector>

#include "qrod/spectrum.hpp"

extern "C" void dsyev_(const char* jobz, const char* uplo, const int* n, double* a, const int* lda, double* w,
                       double* work, const int* lwork, int* info, std::size_t, std::size_t);

namespace qrod::testing {

/// B = 1e4 table with 70 levels (35 per parity) on the default 4001-point grid.
inline const Spectrum& table_spectrum() {
  static const Spectrum sp = solve_spectrum({1e4}, 70);
  return sp;
}

/// Dense symmetric eigenvalues (ascending) via LAPACK dsyev. `a` is overwritten.
inline std::vector<double> dense_eigenvalues(std::vector<double> a, int n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  int lwork = -1, info = 0;
  double query = 0.0;
  dsyev_("N", "U", &n, a.data(), &n, w.data(), &query, &lwork, &info, 1, 1);
  lwork = static_cast<int>(query);
  std::vector<double> work(static_cast<std::size_t>(lwork));
  dsyev_("N", "U", &n, a.data(), &n, w.data(), work.data(), &lwork, &info, 1, 1);
  return w;
}

/// Spectral oracle: -psi'' + B (cos th + tilt sin th) psi on [-pi/2, pi/2] in the
/// Dirichlet sine basis sqrt(2/pi) sin(m (th + pi/2)), m = 1..M. With x = th + pi/2,
/// cos th = sin x and sin th = -cos x, whose matrix elements are closed-form.
inline std::vector<double> sine_basis_levels(double B, double tilt, int M) {
  auto f = [](int k) {
    if (k == 1 || k == -1) return 0.0;
    return (1.0 + ((k % 2 == 0) ? 1.0 : -1.0)) / (1.0 - static_cast<double>(k) * k);
  };
  std::vector<double> a(static_cast<std::size_t>(M) * M, 0.0);
  for (int m = 1; m <= M; ++m) {
    for (int n = 1; n <= M; ++n) {
      double v = B * (f(m - n) - f(m + n)) / M_PI;
      if (std::abs(m - n) == 1) v += -0.5 * B * tilt;
      if (m == n) v += static_cast<double>(m) * m;
      a[static_cast<std::size_t>(m - 1) * M + (n - 1)] = v;
    }
  }
  return dense_eigenvalues(std::move(a), M);
}

}  // namespace qrod::testing

namespace qrod::testing {

/// Raw base-grid basis for eigen-expansion evolution at B = 1e4 (400 levels).
inline const Spectrum& evolution_basis() {
  static const Spectrum sp = [] {
    SpectrumOptions o;
    o.extrapolate = false;
    o.check_resolution = false;
    return solve_spectrum({1e4}, 400, o);
  }();
  return sp;
}

}  // namespace qrod::testing
