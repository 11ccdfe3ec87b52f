#pragma once

// Time evolution of the upright rod and fall-time formulas.
//
// Time is measured in 1/omega_c. The dimensionless Schrodinger equation is then
//     i d psi / dt = f H psi,   H = -d^2/dth^2 + B (cos th + tilt sin th),
// with f = frequency_factor(B) = 1/sqrt(2B) (f = 1 and time in 2J/hbar when B = 0).

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qrod/grid.hpp"
#include "qrod/spectrum.hpp"
#include "qrod/units.hpp"

namespace qrod::dynamics {

using complex = std::complex<double>;

/// A packet counts as fallen once |theta| exceeds pi/2 minus this margin.
inline constexpr double kFallMargin = 0.1;
inline constexpr double kThetaFall = std::numbers::pi / 2 - kFallMargin;
inline constexpr double kDefaultDt = 2.5e-4;
/// sigma above this is no longer "narrow"; prepare_gaussian sets `wide`.
inline constexpr double kWideSigma = 0.3;

struct InitialState {
  double sigma = 0.0;
  Wavefunction psi;
  bool renormalized = false;    // norm after truncation differed from 1 by > 1e-12
  bool wide = false;
  double truncated_weight = 0.0;  // Gaussian probability beyond the walls
};

/// pi^{-1/4} sigma^{-1/2} exp(-th^2 / 2 sigma^2) on the grid, zeroed at the walls and
/// renormalised. Throws InvalidParameter for sigma <= 0.
[[nodiscard]] InitialState prepare_gaussian(double sigma, const Grid& grid);

struct Uncertainty {
  double delta_theta = 0.0;
  double delta_L = 0.0;   // units of hbar
  double product = 0.0;   // units of hbar
};

/// Truncated Gaussian on [-half_width, half_width], by adaptive quadrature.
[[nodiscard]] Uncertainty uncertainty_product(double sigma, double half_width = std::numbers::pi / 2);
/// The same moments from the prepared grid samples (trapezoid sums with the exact
/// Gaussian derivative at the nodes).
[[nodiscard]] Uncertainty uncertainty_product(const InitialState& state);

struct EnergyExpectation {
  DimensionlessEnergy grid;         // <psi|H|psi> with the finite-difference H
  DimensionlessEnergy closed_form;  // 1/(2 sigma^2) + B exp(-sigma^2/4)
  bool truncated = false;           // closed form unreliable: weight beyond walls > 1e-6
};

[[nodiscard]] EnergyExpectation energy_expectation(const InitialState& state, double B);

struct Expansion {
  std::vector<double> coefficients;  // aligned with spectrum.levels
  double completeness = 0.0;         // sum c_n^2
  double state_norm = 0.0;           // <psi|psi>
  double odd_weight = 0.0;           // sum of c_n^2 over odd levels
  std::size_t grid_hash = 0;
};

/// c_n = <psi_n|psi>. Throws InvalidParameter on a grid mismatch and
/// InsufficientBasis when <psi|psi> - sum c_n^2 > 1e-3.
[[nodiscard]] Expansion expand(const Wavefunction& state, const Spectrum& basis);

struct ComplexState {
  Grid grid;
  std::vector<complex> values;
};

[[nodiscard]] ComplexState to_complex(const Wavefunction& psi);
/// sqrt(h sum |a - b|^2).
[[nodiscard]] double l2_distance(const ComplexState& a, const ComplexState& b);

struct EvolutionResult {
  std::vector<double> times;
  std::vector<double> norm;
  std::vector<double> energy;
  std::vector<double> mean_abs_theta;
  std::vector<double> fall_prob;  // 1 - P(|th| <= theta_fall)
  std::vector<double> asymmetry;  // max_i | |psi(th_i)|^2 - |psi(-th_i)|^2 |
  std::vector<ComplexState> snapshots;
  std::size_t steps = 0;
  double dt = 0.0;
};

struct EvolutionOptions {
  double theta_fall = kThetaFall;
  bool keep_snapshots = false;
};

/// Sum_n c_n exp(-i f E_n t) psi_n with the base-grid eigenvalues.
[[nodiscard]] EvolutionResult evolve_eigen(const Expansion& coefficients, const Spectrum& basis,
                                           std::span<const double> times, EvolutionOptions opts = {});

struct DirectOptions {
  double dt = kDefaultDt;
  double theta_fall = kThetaFall;
  bool keep_snapshots = false;
  // Loss rate strength ((|th| - th_fall)/(pi/2 - th_fall))^2, in omega_c, beyond
  // theta_fall: fallen probability is removed instead of reflected.
  bool absorbing = false;
  double absorb_strength = 50.0;
  double norm_tolerance = 1e-6;
};

/// Crank-Nicolson stepping of H - <H> on the state's grid, global phase restored.
/// Throws StepSizeError when the norm drifts by more than norm_tolerance (only
/// checked without absorption) and InvalidParameter for unsorted times or dt <= 0.
[[nodiscard]] EvolutionResult evolve_direct(const ComplexState& state, const PotentialSpec& spec,
                                            std::span<const double> times, DirectOptions opts = {});

/// Evenly spaced t_k = k t_end / (count - 1).
[[nodiscard]] std::vector<double> uniform_times(double t_end, std::size_t count);

/// First time fall_prob reaches `level` (linear interpolation); negative if never.
[[nodiscard]] double crossing_time(const EvolutionResult& r, double level = 0.5);

// ---- fall times -------------------------------------------------------------

struct ClassicalFall {
  double quadrature = 0.0;  // units of 1/omega_c
  double asymptotic = 0.0;  // ln[8(sqrt2 - 1)] - ln dth
};

/// Time for the classical rod released at rest from dth to reach the table.
/// Throws DomainError unless 0 < dth < pi/2.
[[nodiscard]] ClassicalFall classical_fall_time(double delta_theta);

struct TimeValue {
  double omega_units = 0.0;  // 1/omega_c
  double seconds = 0.0;      // NaN when omega_c is unknown
};

/// ln[8(sqrt2 - 1)] - ln s.
[[nodiscard]] TimeValue quantum_fall_time_estimate(const DerivedScales& scales);

struct WkbFallTime {
  TimeValue t;
  double log_term = 0.0;     // ln 4(2 - sqrt2)
  double scale_term = 0.0;   // -ln s
  double gamma_term = 0.0;   // ln (4 gamma)^{1/2}
  double quarter_pi = 0.0;
};

[[nodiscard]] WkbFallTime quantum_fall_time_wkb(const DerivedScales& scales);

/// The stationary-phase sum before any small-angle simplification: the exact classical
/// time from dth to pi/2 at E0 = V0, plus (1/2) ln(2 dth^2 / s^2), plus d delta+/d eps at 0.
[[nodiscard]] double stationary_phase_fall_time(double s, double delta_theta);

/// 2 J sigma^2 / hbar = 2 (sigma/s)^2 / omega_c.
[[nodiscard]] TimeValue spreading_time(double sigma, const DerivedScales& scales);

struct FallTimes {
  ClassicalFall t_class;
  TimeValue t_Q_prime;
  WkbFallTime t_Q;
  TimeValue t_spread;
};

/// t_spread uses sigma = alpha s.
[[nodiscard]] FallTimes fall_times(const DerivedScales& scales, double delta_theta, double alpha);

/// Scales of a problem given only B: s = (2/B)^{1/4}, omega_c and J unknown (NaN).
[[nodiscard]] DerivedScales scales_from_B(double B);

}  // namespace qrod::dynamics
