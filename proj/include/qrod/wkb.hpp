#pragma once

// Semiclassical (WKB) description of the rod: phase integrals, quantization
// conditions, the classical well frequency and the tunneling splitting.
//
// Convention: with E and B in units of hbar^2/2J the phase integral
// (1/hbar) Int sqrt(2J (E - V0 cos th)) dth is simply Int sqrt(E - B cos th) dth.
// At B = 0 the full-domain condition then gives E_n = n^2 exactly.

#include "qrod/numerics.hpp"

namespace qrod::wkb {

/// Annotation attached to every semiclassical result.
enum class Regime { deep_well, near_summit, above_barrier };

/// |epsilon| below this (epsilon = (E - B)/sqrt(2B), barrier-top energy in units of
/// hbar omega_c) counts as the summit region, where plain WKB breaks down.
inline constexpr double kSummitHalfWidth = 1.0;

[[nodiscard]] Regime classify(double E, double B);
[[nodiscard]] const char* to_string(Regime r);

struct TurningPoint {
  double theta0 = 0.0;  // arccos(E/B), in [0, pi/2]
};

/// Throws DomainError unless 0 <= E <= B and B > 0.
[[nodiscard]] TurningPoint turning_point(double E, double B);

struct ActionResult {
  double W = 0.0;              // barrier action at this energy
  double omega = 0.0;          // classical well frequency, units of omega_c
  double omega_natural = 0.0;  // same frequency in units of hbar/2J
  double T = 0.0;              // period, units of 1/omega_c
  Regime regime = Regime::deep_well;
};

/// Int_{-th0}^{th0} sqrt(B cos th - E) dth with the turning points regularised by
/// th = th0 - u^2. Throws DomainError for E outside [0, B].
[[nodiscard]] double barrier_action(double E, double B);
/// The same integral by plain adaptive quadrature of the clipped integrand.
[[nodiscard]] double barrier_action_raw(double E, double B);

/// Int_{th0}^{pi/2} sqrt(E - B cos th) dth, th0 = arccos(E/B) below the barrier and 0 above.
[[nodiscard]] double well_action(double E, double B);
[[nodiscard]] double well_action_raw(double E, double B);

/// Int_{th0}^{pi/2} dth / sqrt(E - B cos th), turning point regularised.
[[nodiscard]] double half_period_integral(double E, double B);

/// Requires 0 < E0 < B. Throws NumericalError if the period quadrature fails.
[[nodiscard]] ActionResult classical_frequency(double E0, double B);

struct QuantizedLevel {
  int n = 0;
  double energy = 0.0;
  Regime regime = Regime::deep_well;
  numerics::RootResult root;
};

/// Root of Int_{th0}^{pi/2} sqrt(E0 - B cos th) = (n + 3/4) pi. Throws RegimeError
/// when the root would lie above the barrier.
[[nodiscard]] QuantizedLevel single_well_quantize(int n, double B);

/// Linear-well closed form B^{2/3} [3 pi/2 (n + 3/4)]^{2/3}.
[[nodiscard]] double low_energy_level(int n, double B);

struct Splitting {
  double center = 0.0;
  double splitting = 0.0;  // E^- - E^+
  double E_plus = 0.0;
  double E_minus = 0.0;
  double W = 0.0;
  bool valid = true;       // false once W < 1
  Regime regime = Regime::deep_well;
};

/// (hbar omega / pi) e^{-W} at the doublet centre E0.
[[nodiscard]] Splitting tunneling_splitting(double E0, double B);

/// Root of Int_{-pi/2}^{pi/2} sqrt(E - B cos th) = n pi, n >= 1. The regime field says
/// whether the root actually lies well above the barrier.
[[nodiscard]] QuantizedLevel high_energy_quantize(int n, double B);

}  // namespace qrod::wkb
