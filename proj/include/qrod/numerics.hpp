#pragma once

// Shared numerical machinery: adaptive Gauss-Kronrod quadrature, bracketed root
// refinement, the symmetric tridiagonal eigensolver and a complex tridiagonal
// factorisation used by the implicit propagator.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qrod::numerics {

using RealFn = std::function<double(double)>;

struct QuadratureOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  std::size_t max_intervals = 2000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t intervals = 0;
  bool converged = false;
};

/// Globally adaptive G7/K15 quadrature on [a, b]. Endpoints are never sampled, so
/// integrable endpoint singularities are tolerated (slowly).
[[nodiscard]] QuadratureResult integrate(const RealFn& f, double a, double b, QuadratureOptions opts = {});

/// Same as integrate() but throws NumericalError if the tolerance is not met.
[[nodiscard]] double integrate_checked(const RealFn& f, double a, double b, QuadratureOptions opts = {});

struct RootResult {
  double root = 0.0;
  double f_lo = 0.0;  // residual at the initial bracket ends; opposite signs
  double f_hi = 0.0;
  int iterations = 0;
};

struct RootOptions {
  double bisect_tol = 1e-6;  // relative bracket width handed to the secant polish
  double polish_tol = 1e-12;
  int max_iterations = 400;
};

/// Bisection down to bisect_tol then safeguarded secant polish. The bracket must
/// straddle a sign change; throws NumericalError otherwise.
[[nodiscard]] RootResult find_root(const RealFn& f, double lo, double hi, RootOptions opts = {});

/// First sub-interval of [lo, hi] (split into `samples` pieces) where f changes sign.
/// Returns false if none is found.
bool scan_bracket(const RealFn& f, double lo, double hi, int samples, double& out_lo, double& out_hi);

struct TridiagonalEigen {
  std::vector<double> values;
  std::vector<double> vectors;  // column-major, rows = matrix order, one column per value
  std::size_t order = 0;

  [[nodiscard]] std::span<const double> vector(std::size_t k) const {
    return {vectors.data() + k * order, order};
  }
};

/// Eigenpairs first..last (0-based, inclusive, ascending) of the symmetric
/// tridiagonal matrix with the given diagonal and off-diagonal.
[[nodiscard]] TridiagonalEigen eig_tridiagonal(std::span<const double> diag, std::span<const double> off,
                                               std::size_t first, std::size_t last, bool want_vectors);

/// LU factorisation of a complex tridiagonal matrix with symmetric off-diagonals,
/// reused for repeated solves (Thomas algorithm, no pivoting).
class ComplexTridiagonalLU {
 public:
  using complex = std::complex<double>;

  ComplexTridiagonalLU() = default;
  ComplexTridiagonalLU(std::vector<complex> diag, std::vector<complex> off);

  /// Overwrites rhs with the solution.
  void solve(std::span<complex> rhs) const;
  [[nodiscard]] std::size_t order() const { return pivot_.size(); }

 private:
  std::vector<complex> pivot_;
  std::vector<complex> upper_;
  std::vector<complex> lower_;
};

/// Classical fourth-order Runge-Kutta for a system y' = f(x, y), fixed step.
template <class State, class Rhs>
State rk4_step(const Rhs& rhs, double x, const State& y, double h) {
  const State k1 = rhs(x, y);
  State tmp = y;
  for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  const State k2 = rhs(x + 0.5 * h, tmp);
  for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  const State k3 = rhs(x + 0.5 * h, tmp);
  for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = y[i] + h * k3[i];
  const State k4 = rhs(x + h, tmp);
  State out = y;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

}  // namespace qrod::numerics
