#include "qrod/summit.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "qrod/errors.hpp"
#include "qrod/gamma.hpp"
#include "qrod/wkb.hpp"

namespace qrod::summit {

namespace {

constexpr double kPi = std::numbers::pi;

// (eps/2) ln(eps^2/e^2)^{1/2} = (eps/2)(ln|eps| - 1), with its eps -> 0 limit.
double log_term(double eps) { return eps == 0.0 ? 0.0 : 0.5 * eps * (std::log(std::abs(eps)) - 1.0); }

// (eps/2) ln[(eps/e)^2 + (1/4 gamma)^2]^{1/2}
double ford_term(double eps) {
  const double q = eps / std::numbers::e;
  const double c = 1.0 / kFourGamma;
  return 0.25 * eps * std::log(q * q + c * c);
}

double sign_of(Parity p) {
  switch (p) {
    case Parity::even: return 1.0;
    case Parity::odd: return -1.0;
    case Parity::none: break;
  }
  throw InvalidParameter("summit quantities need a definite parity");
}

// Reduce to (-pi/2, pi/2].
double mod_pi(double x) {
  double r = std::fmod(x, kPi);
  if (r <= -kPi / 2) r += kPi;
  if (r > kPi / 2) r -= kPi;
  return r;
}

}  // namespace

SummitEnergy summit_energy(double E, double B) {
  if (!(B > 0.0)) throw DomainError("summit variables need B > 0");
  return {(E - B) / std::sqrt(2.0 * B), std::pow(2.0 / B, 0.25)};
}

double energy_from_epsilon(double epsilon, double B) {
  if (!(B > 0.0)) throw DomainError("summit variables need B > 0");
  return B + epsilon * std::sqrt(2.0 * B);
}

GammaPhase gamma_phase(double epsilon) {
  GammaPhase g;
  g.exact = 0.5 * special::arg_gamma_half(epsilon);
  g.ford = ford_term(epsilon);
  g.difference = g.ford - g.exact;
  return g;
}

PhaseCorrection phase_delta(double epsilon) {
  PhaseCorrection p;
  const double smooth = log_term(epsilon) - ford_term(epsilon);
  const double a = 0.5 * std::atan(std::exp(kPi * epsilon));
  p.total_plus = smooth + a;
  p.total_minus = smooth - a;
  p.regime = epsilon < 0.0 ? Side::below : (epsilon > 0.0 ? Side::above : Side::at);
  const double brace = p.regime == Side::above ? kPi / 4 : 0.0;
  p.delta_plus = p.total_plus - brace;
  p.delta_minus = p.total_minus + brace;
  return p;
}

double summit_residual(double E, double B, int n, Parity parity) {
  const double sign = sign_of(parity);
  const double eps = summit_energy(E, B).epsilon;
  const double action = wkb::well_action(E, B);
  return action + log_term(eps) - ford_term(eps) + sign * 0.5 * std::atan(std::exp(kPi * eps)) - (n + 0.75) * kPi;
}

SummitLevel summit_quantize(int n, double B, Parity parity, double window) {
  sign_of(parity);
  if (n < 0) throw InvalidParameter("quantum number must be >= 0");
  if (!(B > 1.0)) throw RegimeError("near-summit quantization needs B >> 1");
  const double root_scale = std::sqrt(2.0 * B);
  const double lo = std::max(0.0, B - window * root_scale);
  const double hi = B + window * root_scale;
  auto residual = [=](double E) { return summit_residual(E, B, n, parity); };
  double a = 0.0, b = 0.0;
  if (!numerics::scan_bracket(residual, lo, hi, 400, a, b)) {
    throw RegimeError("no near-summit root for n = " + std::to_string(n) + " within |eps| <= " + std::to_string(window));
  }
  SummitLevel s;
  s.n = n;
  s.parity = parity;
  s.root = numerics::find_root(residual, a, b);
  s.energy = s.root.root;
  s.epsilon = summit_energy(s.energy, B).epsilon;
  return s;
}

SummitAction summit_action_scaled(double epsilon, double xi) {
  SummitAction r;
  r.epsilon = epsilon;
  r.xi = xi;
  const double a = 2.0 * epsilon;
  const double xi0 = epsilon < 0.0 ? std::sqrt(-a) : 0.0;
  if (xi < xi0) throw DomainError("summit action: xi below the turning point");
  r.asymptotic = 0.5 * xi * xi - log_term(epsilon);
  if (epsilon != 0.0) r.asymptotic += 0.5 * epsilon * std::log(2.0 * xi * xi);
  // Antiderivative of sqrt(x^2 + a): (x sqrt(x^2 + a) + a ln(x + sqrt(x^2 + a))) / 2.
  auto F = [a](double x) {
    const double root = std::sqrt(std::max(x * x + a, 0.0));
    const double arg = x + root;
    return 0.5 * (x * root + (a != 0.0 ? a * std::log(arg) : 0.0));
  };
  r.exact = F(xi) - (a == 0.0 ? 0.0 : F(xi0));
  r.asymptotic_valid = xi >= 3.0 * std::max(1.0, std::sqrt(std::abs(a)));
  return r;
}

SummitAction summit_action(double E, double B, double theta) {
  const auto se = summit_energy(E, B);
  return summit_action_scaled(se.epsilon, theta / se.xi_scale);
}

ParabolicPhases parabolic_phases(double epsilon, double xi_max, double step) {
  if (!(xi_max > 5.0) || !(step > 0.0)) throw InvalidParameter("parabolic_phases: need xi_max > 5 and step > 0");
  using State = std::array<double, 2>;
  auto rhs = [epsilon](double x, const State& y) { return State{y[1], -(2.0 * epsilon + x * x) * y[0]}; };
  auto offset = [&](State y) {
    const auto steps = static_cast<long>(std::ceil(xi_max / step));
    const double h = xi_max / static_cast<double>(steps);
    double x = 0.0;
    for (long i = 0; i < steps; ++i) {
      y = numerics::rk4_step(rhs, x, y, h);
      x = (i + 1) * h;
    }
    // psi ~ A p^{-1/2} cos(Phi): psi' + (p'/2p) psi = -A p^{1/2} sin(Phi).
    const double p = std::sqrt(x * x + 2.0 * epsilon);
    const double dp = x / p;
    const double phase = std::atan2(-(y[1] + 0.5 * dp / p * y[0]) / std::sqrt(p), y[0] * std::sqrt(p));
    double reference = 0.5 * x * x;
    if (epsilon != 0.0) reference += 0.5 * epsilon * std::log(2.0 * x * x);
    return mod_pi(phase - reference);
  };
  ParabolicPhases out;
  out.even = offset({1.0, 0.0});
  out.odd = offset({0.0, 1.0});
  double diff = std::fmod(out.even - out.odd, kPi);
  if (diff < 0.0) diff += kPi;
  out.difference = diff;
  const double half_arg = 0.5 * special::arg_gamma_half(epsilon);
  const double a = 0.5 * std::atan(std::exp(kPi * epsilon));
  out.predicted_even = mod_pi(-half_arg + a - kPi / 4);
  out.predicted_odd = mod_pi(-half_arg - a - kPi / 4);
  out.predicted_difference = 2.0 * a;
  return out;
}

}  // namespace qrod::summit
