#pragma once

// Slightly slanted table. In the shifted frame the tilt adds B dth sin th to the
// potential; within one doublet this is a two-level problem
//     [ E+  V ] [c+]       [c+]
//     [ V  E- ] [c-]  = E' [c-],   V = B dth Int sin th psi- psi+ dth.

#include <array>

#include "qrod/grid.hpp"
#include "qrod/spectrum.hpp"

namespace qrod::slanted {

/// "Much greater than" in the regime test means at least this factor.
inline constexpr double kMuchGreater = 10.0;

struct DoubletStates {
  Wavefunction plus;
  Wavefunction minus;
  Parity plus_parity = Parity::even;
  Parity minus_parity = Parity::odd;
  double E_plus = 0.0;
  double E_minus = 0.0;
};

/// The n-th (1-based) doublet of a tilt-free spectrum. Throws RangeError if absent.
[[nodiscard]] DoubletStates doublet_states(const Spectrum& spectrum, int n);

/// B dth Int sin th psi- psi+. Throws InvalidParameter when both states share a parity.
[[nodiscard]] double coupling_element(const DoubletStates& states, double B, double delta_theta);

struct TwoLevelProblem {
  DimensionlessEnergy E_plus;
  DimensionlessEnergy E_minus;
  DimensionlessEnergy V_coupling;
  double delta_theta = 0.0;
  double left_overlap = 0.0;  // Int_{-pi/2}^{0} psi+ psi-
};

[[nodiscard]] TwoLevelProblem make_problem(const DoubletStates& states, double B, double delta_theta);

struct PerturbedDoublet {
  std::array<double, 2> energies{};                 // ascending
  std::array<std::array<double, 2>, 2> mixing{};    // mixing[k] = (c+, c-) of state k
  std::array<double, 2> P_left{};
  std::array<double, 2> P_right{};
  bool arbitrary_mixing = false;  // V = 0 on an exactly degenerate pair
};

/// Throws InvalidParameter when E_minus < E_plus.
[[nodiscard]] PerturbedDoublet solve_two_level(const TwoLevelProblem& problem);

struct RegimeCheck {
  bool valid = false;
  bool lower_violation = false;  // inter-doublet gap not >> V0 dth
  bool upper_violation = false;  // V0 dth not >> splitting
  double gap = 0.0;
  double splitting = 0.0;
};

[[nodiscard]] RegimeCheck regime_check(const Doublet& doublet, const Doublet& neighbor, double v0_tilt,
                                       double factor = kMuchGreater);

struct Localization {
  double P_left = 0.0;
  double P_right = 0.0;
};

/// P_left = Int_{-pi/2}^{0} |psi|^2 (the centre node shared half and half), normalised
/// so that P_left + P_right = 1.
[[nodiscard]] Localization localization_measure(const Wavefunction& state);

/// Normalised c+ psi+ + c- psi- on the grid.
[[nodiscard]] Wavefunction combine(const DoubletStates& states, double c_plus, double c_minus);

}  // namespace qrod::slanted
