#include "qrod/wkb.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qrod/errors.hpp"

namespace qrod::wkb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2;

numerics::QuadratureOptions tight() { return {1e-14, 1e-13, 4000}; }

}  // namespace

Regime classify(double E, double B) {
  if (B <= 0.0) return Regime::above_barrier;
  const double eps = (E - B) / std::sqrt(2.0 * B);
  if (eps >= kSummitHalfWidth) return Regime::above_barrier;
  if (eps <= -kSummitHalfWidth) return Regime::deep_well;
  return Regime::near_summit;
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::deep_well: return "deep-well";
    case Regime::near_summit: return "near-summit";
    case Regime::above_barrier: return "above-barrier";
  }
  return "deep-well";
}

TurningPoint turning_point(double E, double B) {
  if (!(B > 0.0)) throw DomainError("turning point needs B > 0");
  if (E < 0.0 || E > B) throw DomainError("turning point needs 0 <= E <= B, got E = " + std::to_string(E));
  return {std::acos(E / B)};
}

double barrier_action(double E, double B) {
  const double t0 = turning_point(E, B).theta0;
  if (t0 == 0.0) return 0.0;
  // B (cos(t0 - u^2) - cos t0) = 2 B sin(t0 - u^2/2) sin(u^2/2), free of cancellation.
  auto integrand = [=](double u) {
    const double u2 = u * u;
    const double gap = 2.0 * B * std::sin(t0 - 0.5 * u2) * std::sin(0.5 * u2);
    return 2.0 * u * std::sqrt(std::max(gap, 0.0));
  };
  return 2.0 * numerics::integrate_checked(integrand, 0.0, std::sqrt(t0), tight());
}

double barrier_action_raw(double E, double B) {
  const double t0 = turning_point(E, B).theta0;
  auto integrand = [=](double th) { return std::sqrt(std::max(B * std::cos(th) - E, 0.0)); };
  return 2.0 * numerics::integrate_checked(integrand, 0.0, t0, {1e-14, 1e-12, 20000});
}

double well_action(double E, double B) {
  if (E < 0.0) throw DomainError("well action needs E >= 0");
  if (E >= B) {
    auto integrand = [=](double th) { return std::sqrt(E - B * std::cos(th)); };
    return numerics::integrate_checked(integrand, 0.0, kHalfPi, tight());
  }
  const double t0 = std::acos(E / B);
  auto integrand = [=](double u) {
    const double u2 = u * u;
    const double gap = 2.0 * B * std::sin(t0 + 0.5 * u2) * std::sin(0.5 * u2);
    return 2.0 * u * std::sqrt(std::max(gap, 0.0));
  };
  return numerics::integrate_checked(integrand, 0.0, std::sqrt(kHalfPi - t0), tight());
}

double well_action_raw(double E, double B) {
  if (E < 0.0) throw DomainError("well action needs E >= 0");
  const double t0 = E >= B ? 0.0 : std::acos(E / B);
  auto integrand = [=](double th) { return std::sqrt(std::max(E - B * std::cos(th), 0.0)); };
  return numerics::integrate_checked(integrand, t0, kHalfPi, {1e-14, 1e-12, 20000});
}

double half_period_integral(double E, double B) {
  if (!(B > 0.0) || !(E > 0.0) || !(E < B)) throw DomainError("period integral needs 0 < E < B");
  const double t0 = std::acos(E / B);
  auto integrand = [=](double u) {
    const double u2 = u * u;
    const double gap = 2.0 * B * std::sin(t0 + 0.5 * u2) * std::sin(0.5 * u2);
    if (u == 0.0) return 2.0 / std::sqrt(B * std::sin(t0));
    return 2.0 * u / std::sqrt(gap);
  };
  return numerics::integrate_checked(integrand, 0.0, std::sqrt(kHalfPi - t0), tight());
}

ActionResult classical_frequency(double E0, double B) {
  ActionResult r;
  const double I = half_period_integral(E0, B);
  r.W = barrier_action(E0, B);
  r.T = std::sqrt(2.0 * B) * I;
  r.omega = 2.0 * kPi / r.T;
  r.omega_natural = 2.0 * kPi / I;
  r.regime = classify(E0, B);
  return r;
}

QuantizedLevel single_well_quantize(int n, double B) {
  if (n < 0) throw InvalidParameter("quantum number must be >= 0");
  if (!(B > 0.0)) throw RegimeError("single-well quantization needs a barrier (B > 0)");
  const double target = (n + 0.75) * kPi;
  auto residual = [=](double E) { return well_action(E, B) - target; };
  if (residual(B) < 0.0) {
    throw RegimeError("level n = " + std::to_string(n) + " lies above the barrier; use summit or high-energy quantization");
  }
  QuantizedLevel q;
  q.n = n;
  q.root = numerics::find_root(residual, 0.0, B);
  q.energy = q.root.root;
  q.regime = classify(q.energy, B);
  return q;
}

double low_energy_level(int n, double B) {
  if (n < 0) throw InvalidParameter("quantum number must be >= 0");
  return std::cbrt(B * B) * std::pow(1.5 * kPi * (n + 0.75), 2.0 / 3.0);
}

Splitting tunneling_splitting(double E0, double B) {
  if (!(B > 0.0) || !(E0 > 0.0) || !(E0 < B)) throw DomainError("tunneling splitting needs 0 < E0 < B");
  Splitting s;
  s.center = E0;
  s.W = barrier_action(E0, B);
  const double I = half_period_integral(E0, B);
  // (hbar omega / pi) e^{-W}, with hbar omega = 2 pi / I in units of hbar^2/2J.
  s.splitting = 2.0 * std::exp(-s.W) / I;
  s.E_plus = E0 - 0.5 * s.splitting;
  s.E_minus = E0 + 0.5 * s.splitting;
  s.valid = s.W >= 1.0;
  s.regime = classify(E0, B);
  return s;
}

QuantizedLevel high_energy_quantize(int n, double B) {
  if (n < 1) throw InvalidParameter("high-energy quantum number must be >= 1");
  if (B < 0.0) throw InvalidParameter("B must be >= 0");
  const double target = n * kPi;
  auto residual = [=](double E) { return 2.0 * well_action(E, B) - target; };
  QuantizedLevel q;
  q.n = n;
  q.root = numerics::find_root(residual, 0.0, B + static_cast<double>(n) * n + 1.0);
  q.energy = q.root.root;
  q.regime = classify(q.energy, B);
  return q;
}

}  // namespace qrod::wkb
