#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "qrod/errors.hpp"
#include "qrod/numerics.hpp"
#include "qrod/spectrum.hpp"
#include "qrod/wkb.hpp"
#include "support.hpp"

using namespace qrod;
using namespace qrod::wkb;

namespace {

// Time for the classical rod (theta'' = sin theta, omega_c units) released at rest
// from theta0 to reach the wall, by RK4 with a final partial step.
double rk4_quarter_period(double theta0) {
  using S = std::array<double, 2>;
  const auto rhs = [](double, const S& y) { return S{y[1], std::sin(y[0])}; };
  S y{theta0, 0.0};
  const double h = 1e-4;
  double t = 0.0;
  while (true) {
    const S next = numerics::rk4_step(rhs, t, y, h);
    if (next[0] >= std::numbers::pi / 2) {
      // linear interpolation inside the last step
      return t + h * (std::numbers::pi / 2 - y[0]) / (next[0] - y[0]);
    }
    y = next;
    t += h;
  }
}

}  // namespace

TEST_SUITE("wkb") {
  TEST_CASE("regime classification") {
    CHECK(classify(0.5e4, 1e4) == Regime::deep_well);
    CHECK(classify(1e4, 1e4) == Regime::near_summit);
    CHECK(classify(1.2e4, 1e4) == Regime::above_barrier);
    CHECK(std::string(to_string(Regime::near_summit)) == "near-summit");
  }

  TEST_CASE("turning point") {
    CHECK(turning_point(0.5, 1.0).theta0 == doctest::Approx(std::acos(0.5)));
    CHECK(turning_point(0.0, 1.0).theta0 == doctest::Approx(std::numbers::pi / 2));
    CHECK_THROWS_AS((void)turning_point(2.0, 1.0), DomainError);
    CHECK_THROWS_AS((void)turning_point(0.5, 0.0), DomainError);
  }

  TEST_CASE("regularised and plain quadratures agree") {
    for (double e : {0.1, 0.5, 0.9, 0.999}) {
      CHECK(barrier_action(e * 1e4, 1e4) == doctest::Approx(barrier_action_raw(e * 1e4, 1e4)).epsilon(1e-7));
      CHECK(well_action(e * 1e4, 1e4) == doctest::Approx(well_action_raw(e * 1e4, 1e4)).epsilon(1e-7));
    }
    CHECK(barrier_action(1e4, 1e4) == doctest::Approx(0.0));
    CHECK_THROWS_AS((void)barrier_action(2e4, 1e4), DomainError);
  }

  TEST_CASE("free rotor: full-domain condition gives n^2") {
    for (int n = 1; n <= 6; ++n) CHECK(high_energy_quantize(n, 0.0).energy == doctest::Approx(n * n).epsilon(1e-10));
    // far above the barrier the potential only shifts n^2 by its mean, 2B/pi
    const auto q = high_energy_quantize(400, 1e3);
    CHECK(q.regime == Regime::above_barrier);
    CHECK(q.energy - 160000.0 == doctest::Approx(2e3 / std::numbers::pi).epsilon(5e-3));
  }

  TEST_CASE("classical period matches direct integration of the motion") {
    for (double e : {0.2, 0.6, 0.95}) {
      const ActionResult r = classical_frequency(e * 1e4, 1e4);
      CHECK(r.T == doctest::Approx(2.0 * rk4_quarter_period(std::acos(e))).epsilon(1e-6));
    }
  }

  TEST_CASE("frequency scaling with B") {
    const ActionResult a = classical_frequency(0.5e4, 1e4);
    const ActionResult b = classical_frequency(1e4, 2e4);
    // same E/B: omega_c units invariant, natural units scale by sqrt 2
    CHECK(b.omega == doctest::Approx(a.omega).epsilon(1e-10));
    CHECK(b.omega_natural / a.omega_natural == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  }

  TEST_CASE("linear-well closed form against single-well quantization (B = 1e6)") {
    for (int n = 0; n <= 5; ++n) {
      const double q = single_well_quantize(n, 1e6).energy;
      INFO("n = " << n);
      CHECK(std::abs(q - low_energy_level(n, 1e6)) / q < 5e-3);
    }
  }

  TEST_CASE("single-well levels above the barrier are refused") {
    CHECK_THROWS_AS((void)single_well_quantize(40, 1e4), RegimeError);
    CHECK_THROWS_AS((void)single_well_quantize(-1, 1e4), InvalidParameter);
    CHECK_THROWS_AS((void)single_well_quantize(0, 0.0), RegimeError);
  }

  TEST_CASE("doublet centres and splittings against the numerical spectrum") {
    const auto rows = pairing_table(qrod::testing::table_spectrum());
    int checked = 0;
    for (const auto& d : rows) {
      const double centre = 0.5 * (d.E_plus.value + d.E_minus.value);
      if (centre >= 1e4) break;
      const double W = barrier_action(centre, 1e4);
      if (W < 3.0 || W > 15.0) continue;
      const QuantizedLevel q = single_well_quantize(d.n - 1, 1e4);
      const Splitting s = tunneling_splitting(q.energy, 1e4);
      INFO("n = " << d.n << " W = " << W);
      CHECK(std::abs(q.energy - centre) < 0.01 * d.gap);
      CHECK(s.splitting / d.splitting < 2.0);
      CHECK(s.splitting / d.splitting > 0.5);
      CHECK(s.valid);
      ++checked;
    }
    CHECK(checked >= 3);
  }

  TEST_CASE("deep doublets: splitting too small to resolve, W large") {
    const Splitting s = tunneling_splitting(single_well_quantize(5, 1e4).energy, 1e4);
    CHECK(s.W > 50.0);
    CHECK(s.splitting < 1e-20);
    CHECK(s.E_minus >= s.E_plus);
  }
}
