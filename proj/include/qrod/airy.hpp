#pragma once

// Linear-well limit. Near a wall the potential is B (pi/2 - |th|), so the lowest
// levels are E_n = B^{2/3} lambda_n with -lambda_n the zeros of Ai.

#include <string_view>
#include <vector>

#include "qrod/units.hpp"

namespace qrod::airy {

/// Ai(x) for real x: Maclaurin series (long double) near the origin, asymptotic
/// expansions beyond.
[[nodiscard]] double ai(double x);
[[nodiscard]] double ai_prime(double x);

/// Magnitude of the (n+1)-th zero of Ai, n >= 0, by Newton iteration.
[[nodiscard]] double airy_zero(int n);

/// [3 pi/2 (n + 3/4)]^{2/3}.
[[nodiscard]] double wkb_lambda(int n);

/// B^{2/3} lambda_n.
[[nodiscard]] DimensionlessEnergy linear_well_energy(int n, double B);

enum class Source { airy, wkb };
[[nodiscard]] std::string_view to_string(Source s);

struct LinearWellLevel {
  int n = 0;
  double lambda = 0.0;
  Source source = Source::airy;
};

/// Rows n = 0..n_max for both sources, airy first.
[[nodiscard]] std::vector<LinearWellLevel> level_table(int n_max);

}  // namespace qrod::airy
