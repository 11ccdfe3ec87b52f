#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qrod/errors.hpp"
#include "qrod/spectrum.hpp"
#include "support.hpp"

using namespace qrod;
using qrod::testing::sine_basis_levels;
using qrod::testing::table_spectrum;

TEST_SUITE("spectrum") {
  TEST_CASE("potential and its domain") {
    const PotentialSpec p{1e4, 0.0};
    CHECK(potential(0.0, p) == doctest::Approx(1e4));
    CHECK(potential(std::numbers::pi / 2, p) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(potential(0.3, {1e4, 0.01}) == doctest::Approx(1e4 * (std::cos(0.3) + 0.01 * std::sin(0.3))));
    CHECK_THROWS_AS((void)potential(1.6, p), DomainError);
  }

  TEST_CASE("free rotor: discrete dispersion and extrapolated n^2") {
    SpectrumOptions o;
    o.grid_n = 1001;
    const Spectrum sp = solve_spectrum({0.0}, 10, o);
    const double h = sp.grid.step();
    for (std::size_t k = 0; k < sp.levels.size(); ++k) {
      const double n = static_cast<double>(k + 1);
      const double discrete = 4.0 / (h * h) * std::pow(std::sin(n * h / 2.0), 2);
      CHECK(sp.levels[k].grid_energy == doctest::Approx(discrete).epsilon(1e-10));
      CHECK(sp.levels[k].energy.value == doctest::Approx(n * n).epsilon(1e-8));
      CHECK(sp.levels[k].parity == (k % 2 == 0 ? Parity::even : Parity::odd));
    }
  }

  TEST_CASE("extrapolated levels agree with a sine-basis diagonalisation") {
    const auto oracle = sine_basis_levels(1e4, 0.0, 260);
    const Spectrum& sp = table_spectrum();
    double worst = 0.0;
    for (std::size_t k = 0; k < sp.levels.size(); ++k) {
      worst = std::max(worst, std::abs(sp.levels[k].energy.value - oracle[k]));
    }
    MESSAGE("max |E_fd - E_sine| = " << worst);
    CHECK(worst < 1e-4);
  }

  TEST_CASE("tilted levels agree with the sine-basis oracle") {
    const auto oracle = sine_basis_levels(1e4, 0.01, 260);
    SpectrumOptions o;
    const Spectrum sp = solve_spectrum({1e4, 0.01}, 20, o);
    for (std::size_t k = 0; k < sp.levels.size(); ++k) {
      CHECK(sp.levels[k].energy.value == doctest::Approx(oracle[k]).epsilon(1e-6));
      CHECK(sp.levels[k].parity == Parity::none);
    }
  }

  TEST_CASE("table rows at B = 1e4") {
    const auto rows = pairing_table(table_spectrum(), 23, 34);
    REQUIRE(rows.size() == 12);
    CHECK(rows[0].E_plus.value == doctest::Approx(9420.43).epsilon(0.05 / 9420.43));
    CHECK(rows[0].gap == doctest::Approx(187.59).epsilon(0.05 / 187.59));
    CHECK(std::abs(rows[4].E_plus.value - 10024.28) < 0.05);
    CHECK(std::abs(rows[4].E_minus.value - 10071.29) < 0.05);
    CHECK(std::abs(rows[4].splitting - 47.01) < 0.05);
    CHECK(std::abs(rows[4].pairing_ratio - 0.3838) < 0.002);
    CHECK(std::abs(rows[11].pairing_ratio - 0.4945) < 0.002);
  }

  TEST_CASE("parity structure and 1-based indices") {
    const Spectrum& sp = table_spectrum();
    for (int n = 1; n <= 35; ++n) {
      const auto e = sp.find(Parity::even, n);
      const auto o = sp.find(Parity::odd, n);
      REQUIRE(e);
      REQUIRE(o);
      CHECK(parity_overlap(sp.wavefunctions[*e]) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(parity_overlap(sp.wavefunctions[*o]) == doctest::Approx(-1.0).epsilon(1e-10));
    }
    CHECK_FALSE(sp.find(Parity::even, 36));
    CHECK(sp.of_parity(Parity::odd).size() == 35);
  }

  TEST_CASE("eigenfunctions are orthonormal and vanish at the walls") {
    const Spectrum& sp = table_spectrum();
    for (std::size_t i = 0; i < sp.levels.size(); i += 7) {
      const auto& w = sp.wavefunctions[i];
      CHECK(w.values.front() == 0.0);
      CHECK(w.values.back() == 0.0);
      CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-12));
      std::vector<double> sq(w.values.size());
      for (std::size_t k = 0; k < sq.size(); ++k) sq[k] = w.values[k] * w.values[k];
      CHECK(simpson(w.grid, sq) == doctest::Approx(1.0).epsilon(1e-8));
      for (std::size_t j = i + 1; j < sp.levels.size(); j += 11) {
        CHECK(std::abs(overlap(w, sp.wavefunctions[j])) < 1e-10);
      }
    }
  }

  TEST_CASE("eigenfunctions satisfy the Mathieu form") {
    const Spectrum& sp = table_spectrum();
    for (std::size_t i : {std::size_t{0}, std::size_t{25}, std::size_t{69}}) {
      CHECK(mathieu_residual(sp, i) < 1e-3);
    }
  }

  TEST_CASE("pairing ratio tends to one half above the barrier") {
    const auto rows = pairing_table(table_spectrum());
    for (const auto& d : rows) {
      if (d.n >= 23 && d.n <= 34) {
        INFO("n = " << d.n);
        if (d.n > 23) CHECK(d.pairing_ratio >= rows[static_cast<std::size_t>(d.n - 2)].pairing_ratio);
      }
      CHECK(d.pairing_ratio < 0.5);
      CHECK(d.splitting >= -eigenvalue_noise(table_spectrum()));
    }
  }

  TEST_CASE("resolution and parameter errors") {
    SpectrumOptions coarse;
    coarse.grid_n = 201;
    CHECK_THROWS_AS((void)solve_spectrum({1e4}, 30, coarse), InvalidParameter);
    CHECK_THROWS_AS((void)solve_spectrum({-1.0}, 5), InvalidParameter);
    SpectrumOptions tight;
    tight.grid_n = 301;
    tight.resolution_tol = 1e-12;
    CHECK_THROWS_AS((void)solve_spectrum({1e4}, 30, tight), ResolutionError);
    CHECK_THROWS_AS((void)pairing_table(table_spectrum(), 30, 40), RangeError);
    CHECK_THROWS_AS((void)eigenfunction_at(table_spectrum(), 0, 2.0), DomainError);
  }

  TEST_CASE("raw grid energies without extrapolation") {
    SpectrumOptions o;
    o.grid_n = 2001;
    o.extrapolate = false;
    const Spectrum raw = solve_spectrum({1e4}, 10, o);
    for (std::size_t k = 0; k < raw.levels.size(); ++k) {
      CHECK(raw.levels[k].energy.value == raw.levels[k].grid_energy);
    }
  }
}
