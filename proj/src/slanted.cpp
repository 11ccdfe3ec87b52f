#include "qrod/slanted.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qrod/errors.hpp"

namespace qrod::slanted {

namespace {

// Trapezoid over the left half [-hw, 0].
double left_integral(const Grid& g, const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t c = g.centre();
  double s = 0.0;
  for (std::size_t i = 0; i <= c; ++i) {
    const double w = (i == 0 || i == c) ? 0.5 : 1.0;
    s += w * a[i] * b[i];
  }
  return s * g.step();
}

}  // namespace

DoubletStates doublet_states(const Spectrum& spectrum, int n) {
  if (spectrum.spec.tilt != 0.0) throw InvalidParameter("doublet states need a tilt-free spectrum");
  const auto p = spectrum.find(Parity::even, n);
  const auto m = spectrum.find(Parity::odd, n);
  if (!p || !m) throw RangeError("spectrum does not contain doublet n = " + std::to_string(n));
  DoubletStates d;
  d.plus = spectrum.wavefunctions[*p];
  d.minus = spectrum.wavefunctions[*m];
  d.plus_parity = spectrum.levels[*p].parity;
  d.minus_parity = spectrum.levels[*m].parity;
  d.E_plus = spectrum.levels[*p].energy.value;
  d.E_minus = spectrum.levels[*m].energy.value;
  if (d.E_minus < d.E_plus && d.E_plus - d.E_minus <= eigenvalue_noise(spectrum)) d.E_minus = d.E_plus;
  return d;
}

double coupling_element(const DoubletStates& states, double B, double delta_theta) {
  if (states.plus_parity == states.minus_parity) {
    throw InvalidParameter("coupling element needs one even and one odd state");
  }
  if (!(states.plus.grid == states.minus.grid)) throw InvalidParameter("doublet states on different grids");
  const Grid& g = states.plus.grid;
  std::vector<double> f(g.points());
  for (std::size_t i = 0; i < g.points(); ++i) f[i] = std::sin(g.theta(i)) * states.plus.values[i] * states.minus.values[i];
  return B * delta_theta * trapezoid(g, f);
}

TwoLevelProblem make_problem(const DoubletStates& states, double B, double delta_theta) {
  TwoLevelProblem p;
  p.E_plus = {states.E_plus};
  p.E_minus = {states.E_minus};
  p.V_coupling = {coupling_element(states, B, delta_theta)};
  p.delta_theta = delta_theta;
  p.left_overlap = left_integral(states.plus.grid, states.plus.values, states.minus.values);
  return p;
}

PerturbedDoublet solve_two_level(const TwoLevelProblem& problem) {
  const double ep = problem.E_plus.value, em = problem.E_minus.value, V = problem.V_coupling.value;
  if (em < ep) throw InvalidParameter("two-level problem needs E_minus >= E_plus");
  PerturbedDoublet d;
  const double centre = 0.5 * (ep + em);
  const double half = 0.5 * std::hypot(em - ep, 2.0 * V);
  d.energies = {centre - half, centre + half};
  if (V == 0.0) {
    d.mixing = {{{1.0, 0.0}, {0.0, 1.0}}};
    d.arbitrary_mixing = em == ep;
  } else {
    // Rotation angle with tan 2phi = 2V / (E- - E+); lower state (cos phi, -sin phi).
    const double phi = 0.5 * std::atan2(2.0 * V, em - ep);
    const double c = std::cos(phi), s = std::sin(phi);
    d.mixing = {{{c, -s}, {s, c}}};
  }
  for (int k = 0; k < 2; ++k) {
    // Each parity state puts exactly half its weight on either side.
    const double cp = d.mixing[k][0], cm = d.mixing[k][1];
    d.P_left[k] = 0.5 * (cp * cp + cm * cm) + 2.0 * cp * cm * problem.left_overlap;
    d.P_left[k] = std::clamp(d.P_left[k], 0.0, 1.0);
    d.P_right[k] = 1.0 - d.P_left[k];
  }
  return d;
}

RegimeCheck regime_check(const Doublet& doublet, const Doublet& neighbor, double v0_tilt, double factor) {
  RegimeCheck r;
  const double c0 = 0.5 * (doublet.E_plus.value + doublet.E_minus.value);
  const double c1 = 0.5 * (neighbor.E_plus.value + neighbor.E_minus.value);
  r.gap = std::abs(c1 - c0);
  r.splitting = doublet.E_minus.value - doublet.E_plus.value;
  const double v = std::abs(v0_tilt);
  r.lower_violation = !(r.gap >= factor * v);
  r.upper_violation = !(v >= factor * std::abs(r.splitting)) || v == 0.0;
  r.valid = !r.lower_violation && !r.upper_violation;
  return r;
}

Localization localization_measure(const Wavefunction& state) {
  const double left = left_integral(state.grid, state.values, state.values);
  const double total = state.norm() * state.norm();
  Localization l;
  l.P_left = left / total;
  l.P_right = 1.0 - l.P_left;
  return l;
}

Wavefunction combine(const DoubletStates& states, double c_plus, double c_minus) {
  Wavefunction w;
  w.grid = states.plus.grid;
  w.values.resize(w.grid.points());
  for (std::size_t i = 0; i < w.values.size(); ++i) w.values[i] = c_plus * states.plus.values[i] + c_minus * states.minus.values[i];
  const double n = w.norm();
  for (double& v : w.values) v /= n;
  return w;
}

}  // namespace qrod::slanted
