#pragma once

#include <compare>

// Physical rod parameters and the dimensionless frame used by every solver.
//
// Internal units:
//   energy  ->  hbar^2 / 2J
//   angle   ->  radians
//   time    ->  1 / omega_c   (for B > 0)
//
// With these units the barrier height is the single number B = V0 / (hbar^2/2J),
// and the summit angular scale s = (hbar / J omega_c)^{1/2} obeys s^4 B = 2.

namespace qrod {

/// CODATA 2018 reduced Planck constant in J s.
inline constexpr double kHbarSI = 1.054571817e-34;

struct RodParams {
  double mass = 1e-3;     // kg
  double length = 0.1;    // m
  double gravity = 9.81;  // m / s^2
  double hbar = kHbarSI;  // J s; set to 1 for unit-free checks
};

struct DerivedScales {
  double J = 0.0;        // moment of inertia about the fixed end, m l^2 / 3
  double V0 = 0.0;       // barrier height, m g l / 2
  double omega_c = 0.0;  // sqrt(V0 / J) = sqrt(3 g / 2 l)
  double B = 0.0;        // V0 / (hbar^2 / 2J)
  double s = 0.0;        // (hbar / J omega_c)^{1/2}; infinite for g = 0
  double hbar = kHbarSI;

  /// hbar^2 / 2J, the energy unit, in joules.
  [[nodiscard]] double energy_unit() const { return hbar * hbar / (2.0 * J); }
};

struct DimensionlessEnergy {
  double value = 0.0;  // multiples of hbar^2 / 2J

  friend constexpr bool operator==(DimensionlessEnergy, DimensionlessEnergy) = default;
  friend constexpr auto operator<=>(DimensionlessEnergy a, DimensionlessEnergy b) {
    return a.value <=> b.value;
  }
};

/// Throws InvalidParameter unless mass > 0, length > 0, gravity >= 0, hbar > 0.
[[nodiscard]] DerivedScales derive_scales(const RodParams& p);

[[nodiscard]] DimensionlessEnergy to_dimensionless(double energy_joule, const DerivedScales& scales);
[[nodiscard]] double from_dimensionless(DimensionlessEnergy e, const DerivedScales& scales);

/// s^2 = hbar / (J omega_c) expressed through B alone: s^2 = sqrt(2 / B).
[[nodiscard]] double summit_scale_squared(double B);

/// Energy unit divided by hbar omega_c, i.e. factor turning E (hbar^2/2J) into an
/// angular frequency in units of omega_c: 1/sqrt(2B). Equals 1 for B = 0, where
/// time is measured in 2J/hbar instead.
[[nodiscard]] double frequency_factor(double B);

}  // namespace qrod
