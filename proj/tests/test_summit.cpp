#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qrod/errors.hpp"
#include "qrod/gamma.hpp"
#include "qrod/numerics.hpp"
#include "qrod/summit.hpp"
#include "support.hpp"

using namespace qrod;
using namespace qrod::summit;
constexpr double kPi = std::numbers::pi;

namespace {

// Im ln Gamma(x + iy) = y psi(x) + sum_{n>=0} [y/(x+n) - atan(y/(x+n))], with the tail
// beyond N replaced by its leading term y^3 / (6 N^2).
double arg_gamma_series(double x, double y, double psi_x) {
  const int N = 200000;
  double s = y * psi_x;
  for (int n = N - 1; n >= 0; --n) {
    const double t = y / (x + n);
    s += t - std::atan(t);
  }
  return s + y * y * y / (6.0 * static_cast<double>(N) * N);
}

const double kPsiHalf = -0.57721566490153286 - 2.0 * std::numbers::ln2;

}  // namespace

TEST_SUITE("gamma") {
  TEST_CASE("real axis reduces to lgamma") {
    for (double x : {0.1, 0.5, 1.0, 3.7, 12.0, 40.0}) {
      const auto g = special::log_gamma({x, 0.0});
      CHECK(g.real() == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
      CHECK(std::abs(g.imag()) < 1e-15);
    }
  }

  TEST_CASE("arg Gamma(1/2 + i eps) against the digamma series") {
    for (double y : {-5.0, -2.0, -0.3, 0.7, 1.5, 4.0}) {
      CHECK(special::arg_gamma_half(y) == doctest::Approx(arg_gamma_series(0.5, y, kPsiHalf)).epsilon(1e-9));
    }
  }

  TEST_CASE("modulus on the critical line and the recurrence") {
    for (double e : {-3.0, 0.0, 0.5, 2.0}) {
      const auto g = special::log_gamma({0.5, e});
      CHECK(g.real() == doctest::Approx(0.5 * std::log(kPi / std::cosh(kPi * e))).epsilon(1e-12));
      CHECK(special::log_abs_gamma_half(e) == doctest::Approx(g.real()).epsilon(1e-12));
    }
    const std::complex<double> z(0.8, 3.3);
    const auto lhs = special::log_gamma(z + 1.0);
    const auto rhs = special::log_gamma(z) + std::log(z);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }

  TEST_CASE("continuity along a horizontal line") {
    double prev = special::arg_gamma_half(0.0);
    for (int k = 1; k <= 2000; ++k) {
      const double now = special::arg_gamma_half(0.01 * k);
      CHECK(std::abs(now - prev) < 0.05);
      prev = now;
    }
    CHECK_THROWS_AS((void)special::log_gamma({-1.0, 0.0}), DomainError);
  }
}

TEST_SUITE("summit") {
  TEST_CASE("summit variables") {
    const auto se = summit_energy(1e4 + std::sqrt(2e4), 1e4);
    CHECK(se.epsilon == doctest::Approx(1.0));
    CHECK(std::pow(se.xi_scale, 4) * 1e4 == doctest::Approx(2.0));
    CHECK(energy_from_epsilon(1.0, 1e4) == doctest::Approx(1e4 + std::sqrt(2e4)));
    CHECK_THROWS_AS((void)summit_energy(1.0, 0.0), DomainError);
  }

  TEST_CASE("Ford approximation stays within 0.05 rad") {
    double worst = 0.0;
    for (int k = -500; k <= 500; ++k) worst = std::max(worst, std::abs(gamma_phase(0.01 * k).difference));
    MESSAGE("max Ford deviation " << worst);
    CHECK(worst < 0.05);
    CHECK(gamma_phase(0.0).exact == 0.0);
    CHECK(gamma_phase(0.0).ford == 0.0);
    CHECK(gamma_phase(1.3).exact == doctest::Approx(-gamma_phase(-1.3).exact));
  }

  TEST_CASE("phase corrections: continuity of the applied phase at eps = 0") {
    const auto at = phase_delta(0.0);
    CHECK(at.regime == Side::at);
    for (double e : {1e-12, -1e-12}) {
      const auto p = phase_delta(e);
      CHECK(std::abs(p.total_plus - at.total_plus) < 1e-9);
      CHECK(std::abs(p.total_minus - at.total_minus) < 1e-9);
    }
    CHECK(at.total_plus - at.total_minus == doctest::Approx(kPi / 4).epsilon(1e-14));
    // the brace makes delta itself jump by -+ pi/4 when eps crosses 0
    const auto up = phase_delta(1e-12);
    CHECK(up.regime == Side::above);
    CHECK(at.delta_plus - up.delta_plus == doctest::Approx(kPi / 4).epsilon(1e-9));
    CHECK(up.delta_minus - at.delta_minus == doctest::Approx(kPi / 4).epsilon(1e-9));
  }

  TEST_CASE("phase corrections: limits away from the summit") {
    // the eps ln eps pieces cancel at 0
    CHECK(std::abs(phase_delta(1e-10).total_plus - kPi / 8) < 1e-8);
    const auto deep = phase_delta(-4.0);
    CHECK(deep.regime == Side::below);
    const double smooth = 0.5 * (deep.delta_plus + deep.delta_minus);
    CHECK(deep.delta_plus - smooth == doctest::Approx(0.5 * std::exp(-4.0 * kPi)).epsilon(1e-6));
    const auto high = phase_delta(4.0);
    const double asym = 0.5 * (high.delta_plus - high.delta_minus);
    CHECK(std::abs(asym) < std::exp(-4.0 * kPi));
  }

  TEST_CASE("parity enters only through the arctan term") {
    for (double E : {9900.0, 1e4, 10100.0}) {
      const double eps = summit_energy(E, 1e4).epsilon;
      const double even = summit_residual(E, 1e4, 26, Parity::even);
      const double odd = summit_residual(E, 1e4, 26, Parity::odd);
      CHECK(even - odd == doctest::Approx(std::atan(std::exp(kPi * eps))).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)summit_residual(1e4, 1e4, 26, Parity::none), InvalidParameter);
  }

  TEST_CASE("near-summit levels against the numerical spectrum") {
    const Spectrum& sp = qrod::testing::table_spectrum();
    const auto rows = pairing_table(sp, 24, 31);
    for (const auto& d : rows) {
      INFO("n = " << d.n);
      const auto p = summit_quantize(d.n - 1, 1e4, Parity::even);
      const auto m = summit_quantize(d.n - 1, 1e4, Parity::odd);
      CHECK(std::abs(p.energy - d.E_plus.value) < 0.01 * d.gap);
      CHECK(std::abs(m.energy - d.E_minus.value) < 0.01 * d.gap);
    }
  }

  TEST_CASE("near-summit quantization errors") {
    CHECK_THROWS_AS((void)summit_quantize(5, 1e4, Parity::even), RegimeError);
    CHECK_THROWS_AS((void)summit_quantize(26, 1.0, Parity::even), RegimeError);
    CHECK_THROWS_AS((void)summit_quantize(26, 1e4, Parity::none), InvalidParameter);
  }

  TEST_CASE("summit action: closed form and asymptote") {
    CHECK(summit_action_scaled(0.0, 7.0).exact == doctest::Approx(24.5).epsilon(1e-14));
    CHECK(summit_action_scaled(0.0, 7.0).asymptotic == doctest::Approx(24.5).epsilon(1e-14));
    for (double e : {-2.0, 2.0}) {
      const auto a = summit_action_scaled(e, 10.0);
      CHECK(a.asymptotic_valid);
      CHECK(std::abs(a.exact - a.asymptotic) < 0.02);
      const double x0 = e < 0 ? std::sqrt(-2.0 * e) : 0.0;
      const double q = numerics::integrate_checked([e](double x) { return std::sqrt(std::max(2.0 * e + x * x, 0.0)); },
                                                   x0, 10.0);
      CHECK(a.exact == doctest::Approx(q).epsilon(1e-10));
    }
    CHECK_FALSE(summit_action_scaled(2.0, 1.0).asymptotic_valid);
    CHECK_THROWS_AS((void)summit_action_scaled(-2.0, 1.0), DomainError);
    const auto th = summit_action(1e4, 1e4, 0.5);
    CHECK(th.xi == doctest::Approx(0.5 / std::pow(2e-4, 0.25)));
  }

  TEST_CASE("parabolic cylinder phases from the ODE") {
    const auto zero = parabolic_phases(0.0);
    CHECK(std::abs(zero.difference - kPi / 4) < 1e-3);
    for (double e : {-1.5, -0.5, 0.5, 1.5}) {
      INFO("eps = " << e);
      const auto p = parabolic_phases(e);
      CHECK(std::abs(p.difference - p.predicted_difference) < 1e-3);
      CHECK(p.predicted_difference == doctest::Approx(std::atan(std::exp(kPi * e))));
      auto mod_pi = [](double x) { return x - kPi * std::round(x / kPi); };
      CHECK(std::abs(mod_pi(p.even - p.predicted_even)) < 1e-2);
      CHECK(std::abs(mod_pi(p.odd - p.predicted_odd)) < 1e-2);
    }
    CHECK_THROWS_AS((void)parabolic_phases(0.0, 2.0), InvalidParameter);
  }
}
