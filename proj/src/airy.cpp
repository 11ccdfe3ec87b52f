#include "qrod/airy.hpp"

#include <cmath>
#include <numbers>

#include "qrod/errors.hpp"

namespace qrod::airy {

namespace {

constexpr long double kAi0 = 0.355028053887817239260L;
constexpr long double kAiPrime0 = 0.258819403792806798405L;  // -Ai'(0)
constexpr double kPi = std::numbers::pi;

// Below -kNegativeSeries the oscillatory asymptotics are good to ~1e-13; above
// kPositiveSeries the decaying ones are. Between, the series in long double.
constexpr double kNegativeSeries = 8.0;
constexpr double kPositiveSeries = 6.0;
constexpr int kAsymptoticTerms = 12;

struct Pair {
  long double value;
  long double derivative;
};

Pair series(long double x) {
  const long double x3 = x * x * x;
  long double f = 1.0L, g = x;          // running terms of the two power series
  long double fs = f, gs = g;
  long double p = 0.0L, q = 1.0L;       // running terms of their derivatives
  long double ps = 0.0L, qs = q;
  for (int k = 1; k < 200; ++k) {
    const long double k3 = 3.0L * k;
    f *= x3 / ((k3 - 1.0L) * k3);
    g *= x3 / (k3 * (k3 + 1.0L));
    p = k == 1 ? 0.5L * x * x : p * x3 / ((k3 - 3.0L) * (k3 - 1.0L));
    q *= x3 / ((k3 - 2.0L) * k3);
    fs += f;
    gs += g;
    ps += p;
    qs += q;
    const long double tiny = 1e-22L * (std::fabs(fs) + std::fabs(gs) + std::fabs(ps) + std::fabs(qs));
    if (std::fabs(f) + std::fabs(g) + std::fabs(p) + std::fabs(q) < tiny) break;
  }
  return {kAi0 * fs - kAiPrime0 * gs, kAi0 * ps - kAiPrime0 * qs};
}

// u_k and v_k of the standard asymptotic expansions.
struct Coefficients {
  double c[kAsymptoticTerms];
  double d[kAsymptoticTerms];
  Coefficients() {
    c[0] = d[0] = 1.0;
    for (int k = 1; k < kAsymptoticTerms; ++k) {
      c[k] = c[k - 1] * (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / (216.0 * k * (2.0 * k - 1));
      d[k] = -(6.0 * k + 1) / (6.0 * k - 1) * c[k];
    }
  }
};

const Coefficients& coefficients() {
  static const Coefficients table;
  return table;
}

Pair oscillatory(double z) {
  const auto& co = coefficients();
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  double P = 0.0, Q = 0.0, R = 0.0, S = 0.0;
  double power = 1.0;
  for (int k = 0; k < kAsymptoticTerms; ++k) {
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    if (k % 2 == 0) {
      P += sign * co.c[k] * power;
      R += sign * co.d[k] * power;
    } else {
      Q += sign * co.c[k] * power;
      S += sign * co.d[k] * power;
    }
    power /= zeta;
  }
  const double phase = zeta + kPi / 4;
  const double sn = std::sin(phase), cs = std::cos(phase);
  const double root_pi = std::sqrt(kPi);
  const double value = (sn * P - cs * Q) / (root_pi * std::pow(z, 0.25));
  const double derivative = -std::pow(z, 0.25) / root_pi * (cs * R + sn * S);
  return {value, derivative};
}

Pair decaying(double x) {
  const auto& co = coefficients();
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  double L = 0.0, M = 0.0, power = 1.0;
  for (int k = 0; k < kAsymptoticTerms; ++k) {
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    L += sign * co.c[k] * power;
    M += sign * co.d[k] * power;
    power /= zeta;
  }
  const double e = std::exp(-zeta) / (2.0 * std::sqrt(kPi));
  return {e * L / std::pow(x, 0.25), -e * std::pow(x, 0.25) * M};
}

Pair evaluate(double x) {
  if (x < -kNegativeSeries) return oscillatory(-x);
  if (x > kPositiveSeries) return decaying(x);
  return series(x);
}

}  // namespace

double ai(double x) { return static_cast<double>(evaluate(x).value); }
double ai_prime(double x) { return static_cast<double>(evaluate(x).derivative); }

double airy_zero(int n) {
  if (n < 0) throw InvalidParameter("airy_zero: n must be >= 0");
  // a_k ~ -T(3 pi (4k - 1) / 8), k = n + 1.
  const double t = 3.0 * kPi * (4.0 * (n + 1) - 1.0) / 8.0;
  const double t2 = 1.0 / (t * t);
  double lambda = std::pow(t, 2.0 / 3.0) * (1.0 + t2 * (5.0 / 48.0 - t2 * 5.0 / 36.0));
  for (int it = 0; it < 50; ++it) {
    const Pair v = evaluate(-lambda);
    // d/dlambda Ai(-lambda) = -Ai'(-lambda)
    const double step = static_cast<double>(v.value / v.derivative);
    lambda += step;
    if (std::abs(step) < 1e-15 * lambda) break;
  }
  return lambda;
}

double wkb_lambda(int n) {
  if (n < 0) throw InvalidParameter("wkb_lambda: n must be >= 0");
  return std::pow(1.5 * kPi * (n + 0.75), 2.0 / 3.0);
}

DimensionlessEnergy linear_well_energy(int n, double B) {
  if (!(B >= 0.0)) throw InvalidParameter("B must be >= 0");
  return {std::cbrt(B * B) * airy_zero(n)};
}

std::string_view to_string(Source s) { return s == Source::airy ? "airy" : "wkb"; }

std::vector<LinearWellLevel> level_table(int n_max) {
  if (n_max < 0) throw InvalidParameter("level_table: n_max must be >= 0");
  std::vector<LinearWellLevel> rows;
  for (int n = 0; n <= n_max; ++n) rows.push_back({n, airy_zero(n), Source::airy});
  for (int n = 0; n <= n_max; ++n) rows.push_back({n, wkb_lambda(n), Source::wkb});
  return rows;
}

}  // namespace qrod::airy
