#pragma once

// Barrier-top region. Near E = V0 the potential is an inverted parabola and the
// stationary states are parabolic cylinder functions of
//     psi'' + (2 eps + xi^2) psi = 0,   theta = s xi,  eps = (E - V0) / hbar omega_c.
// Matching their asymptotic phases onto WKB waves gives the phase corrections
// delta^(+-)(eps) and a quantization condition that stays valid through the summit.

#include "qrod/numerics.hpp"
#include "qrod/spectrum.hpp"

namespace qrod::summit {

/// gamma entering Ford's approximation of arg Gamma(1/2 + i eps) (= e^{Euler constant}).
inline constexpr double kGamma = 1.78107;
inline constexpr double kFourGamma = 4.0 * kGamma;

struct SummitEnergy {
  double epsilon = 0.0;   // (E - B) / sqrt(2B)
  double xi_scale = 0.0;  // s = (2/B)^{1/4}
};

/// Throws DomainError for B <= 0.
[[nodiscard]] SummitEnergy summit_energy(double E, double B);
[[nodiscard]] double energy_from_epsilon(double epsilon, double B);

struct GammaPhase {
  double exact = 0.0;       // (1/2) arg Gamma(1/2 + i eps)
  double ford = 0.0;        // (eps/2) ln[(eps/e)^2 + (1/4 gamma)^2]^{1/2}
  double difference = 0.0;  // ford - exact
};

[[nodiscard]] GammaPhase gamma_phase(double epsilon);

enum class Side { below, at, above };

struct PhaseCorrection {
  double delta_plus = 0.0;
  double delta_minus = 0.0;
  Side regime = Side::at;
  // delta plus the {0 | +-pi/4} brace, i.e. the phase actually added to the WKB
  // wave. Unlike delta itself this is continuous through eps = 0.
  double total_plus = 0.0;
  double total_minus = 0.0;
};

/// At eps = 0 the brace is taken as 0 (the eps -> 0- branch).
[[nodiscard]] PhaseCorrection phase_delta(double epsilon);

/// Left side minus right side of the near-summit quantization condition at energy E,
/// for semiclassical quantum number n (0-based, as in single-well quantization).
[[nodiscard]] double summit_residual(double E, double B, int n, Parity parity);

struct SummitLevel {
  int n = 0;
  Parity parity = Parity::even;
  double energy = 0.0;
  double epsilon = 0.0;
  numerics::RootResult root;
};

/// Root of the near-summit condition with |eps| <= window. Throws RegimeError when
/// no root lies in the window and InvalidParameter for parity none.
[[nodiscard]] SummitLevel summit_quantize(int n, double B, Parity parity, double window = 10.0);

struct SummitAction {
  double xi = 0.0;
  double epsilon = 0.0;
  double asymptotic = 0.0;  // xi^2/2 + (eps/2) ln(2 xi^2) - (eps/2) ln(eps^2/e^2)^{1/2}
  double exact = 0.0;       // Int_{xi0}^{xi} sqrt(2 eps + x^2) dx
  bool asymptotic_valid = false;
};

[[nodiscard]] SummitAction summit_action(double E, double B, double theta);
/// Same pair directly in summit variables.
[[nodiscard]] SummitAction summit_action_scaled(double epsilon, double xi);

struct ParabolicPhases {
  double even = 0.0;        // asymptotic phase offsets extracted from the ODE, mod pi
  double odd = 0.0;
  double difference = 0.0;  // even - odd reduced to [0, pi)
  double predicted_even = 0.0;
  double predicted_odd = 0.0;
  double predicted_difference = 0.0;  // arctan e^{pi eps}
};

/// Integrates psi'' + (2 eps + xi^2) psi = 0 from xi = 0 with even (1, 0) and odd
/// (0, 1) data by RK4 and reads off the phases relative to xi^2/2 + (eps/2) ln(2 xi^2).
[[nodiscard]] ParabolicPhases parabolic_phases(double epsilon, double xi_max = 30.0, double step = 1e-3);

}  // namespace qrod::summit
