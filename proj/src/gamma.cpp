#include "qrod/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "qrod/errors.hpp"

namespace qrod::special {

namespace {

// B_{2k} / (2k (2k - 1)), k = 1..8.
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,        -1.0 / 360.0,        1.0 / 1260.0,  -1.0 / 1680.0,
    1.0 / 1188.0,      -691.0 / 360360.0,   1.0 / 156.0,   -3617.0 / 122400.0};

constexpr double kShiftTo = 15.0;

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (!(z.real() > 0.0)) throw DomainError("log_gamma is implemented for Re z > 0 only");
  // ln Gamma(z) = ln Gamma(z + m) - sum_k ln(z + k). Each ln(z + k) has Re > 0, so
  // summing principal logs keeps the continuous branch.
  std::complex<double> shift = 0.0;
  while (z.real() < kShiftTo) {
    shift += std::log(z);
    z += 1.0;
  }
  const std::complex<double> inv = 1.0 / z;
  const std::complex<double> inv2 = inv * inv;
  std::complex<double> series = 0.0;
  std::complex<double> power = inv;
  for (double c : kStirling) {
    series += c * power;
    power *= inv2;
  }
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return (z - 0.5) * std::log(z) - z + half_log_2pi + series - shift;
}

double arg_gamma_half(double eps) { return log_gamma({0.5, eps}).imag(); }

double log_abs_gamma_half(double eps) {
  // ln(pi / cosh(pi eps)) / 2, written to avoid overflow in cosh.
  const double x = std::numbers::pi * std::abs(eps);
  const double log_cosh = x + std::log1p(std::exp(-2.0 * x)) - std::log(2.0);
  return 0.5 * (std::log(std::numbers::pi) - log_cosh);
}

}  // namespace qrod::special
