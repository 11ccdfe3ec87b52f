#include "qrod/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qrod/errors.hpp"
#include "qrod/numerics.hpp"
#include "qrod/summit.hpp"

namespace qrod::dynamics {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Moments of a Gaussian truncated to [-a, a]: int e^{-x^2/s^2} and int x^2 e^{-x^2/s^2}.
struct Moments {
  double m0 = 0.0;
  double m2 = 0.0;
};

Moments gaussian_moments(double sigma, double a) {
  const double s2 = sigma * sigma;
  auto w0 = [=](double x) { return std::exp(-x * x / s2); };
  auto w2 = [=](double x) { return x * x * std::exp(-x * x / s2); };
  // Split at a few sigma so the adaptive rule sees the peak.
  const double cut = std::min(a, 12.0 * sigma);
  numerics::QuadratureOptions o{1e-300, 1e-13, 4000};
  Moments m;
  m.m0 = 2.0 * (numerics::integrate_checked(w0, 0.0, cut, o) + (cut < a ? numerics::integrate(w0, cut, a, o).value : 0.0));
  m.m2 = 2.0 * (numerics::integrate_checked(w2, 0.0, cut, o) + (cut < a ? numerics::integrate(w2, cut, a, o).value : 0.0));
  return m;
}

struct Observation {
  double norm = 0.0;
  double energy = 0.0;
  double mean_abs_theta = 0.0;
  double fall_prob = 0.0;
  double asymmetry = 0.0;
};

Observation observe(const Grid& grid, std::span<const complex> psi, const GridHamiltonian& H, double theta_fall) {
  const double h = grid.step();
  const std::size_t n = grid.points();
  Observation o;
  double inside = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = std::norm(psi[i]);
    const double th = grid.theta(i);
    o.norm += p;
    o.mean_abs_theta += std::abs(th) * p;
    if (std::abs(th) <= theta_fall) inside += p;
    o.asymmetry = std::max(o.asymmetry, std::abs(p - std::norm(psi[n - 1 - i])));
  }
  // <psi|H|psi> over the interior; wall samples are zero.
  double e = 0.0;
  const std::size_t m = n - 2;
  for (std::size_t j = 0; j < m; ++j) {
    complex Hpsi = H.diag[j] * psi[j + 1];
    if (j > 0) Hpsi += H.off[j - 1] * psi[j];
    if (j + 1 < m) Hpsi += H.off[j] * psi[j + 2];
    e += (std::conj(psi[j + 1]) * Hpsi).real();
  }
  o.norm *= h;
  o.mean_abs_theta *= h;
  o.energy = o.norm > 0.0 ? e * h / o.norm : 0.0;
  o.fall_prob = 1.0 - inside * h;
  return o;
}

void record(EvolutionResult& r, double t, const ComplexState& s, const GridHamiltonian& H, double theta_fall, bool keep) {
  const Observation o = observe(s.grid, s.values, H, theta_fall);
  r.times.push_back(t);
  r.norm.push_back(o.norm);
  r.energy.push_back(o.energy);
  r.mean_abs_theta.push_back(o.mean_abs_theta);
  r.fall_prob.push_back(o.fall_prob);
  r.asymmetry.push_back(o.asymmetry);
  if (keep) r.snapshots.push_back(s);
}

void check_times(std::span<const double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0)) throw InvalidParameter("evolution times must be >= 0");
    if (i > 0 && times[i] < times[i - 1]) throw InvalidParameter("evolution times must be non-decreasing");
  }
}

// Derivative at eps = 0 of the summit phase left after the action's own log term is
// absorbed: -(Ford term) + (1/2) arctan e^{pi eps}.
double matching_phase_slope() {
  auto phase = [](double eps) { return -summit::gamma_phase(eps).ford + 0.5 * std::atan(std::exp(kPi * eps)); };
  const double h = 1e-5;
  return (phase(h) - phase(-h)) / (2.0 * h);
}

double require_s(const DerivedScales& scales) {
  if (!(scales.s > 0.0) || !std::isfinite(scales.s)) throw DomainError("fall times need a finite summit scale s (g > 0)");
  return scales.s;
}

TimeValue make_time(double w, const DerivedScales& scales) {
  return {w, scales.omega_c > 0.0 ? w / scales.omega_c : kNaN};
}

}  // namespace

InitialState prepare_gaussian(double sigma, const Grid& grid) {
  if (!(sigma > 0.0)) throw InvalidParameter("Gaussian width sigma must be positive");
  InitialState st;
  st.sigma = sigma;
  st.wide = sigma > kWideSigma;
  st.psi.grid = grid;
  st.psi.values.assign(grid.points(), 0.0);
  const double amp = std::pow(kPi, -0.25) / std::sqrt(sigma);
  for (std::size_t i = 1; i + 1 < grid.points(); ++i) {
    const double th = grid.theta(i);
    st.psi.values[i] = amp * std::exp(-th * th / (2.0 * sigma * sigma));
  }
  // Mirror so that psi(-th) = psi(th) holds bit for bit.
  const std::size_t n = grid.points();
  for (std::size_t i = 0; i < n / 2; ++i) st.psi.values[n - 1 - i] = st.psi.values[i];
  st.truncated_weight = std::erfc(grid.half_width() / sigma);
  const double norm = st.psi.norm();
  st.renormalized = std::abs(norm - 1.0) > 1e-12;
  for (double& v : st.psi.values) v /= norm;
  return st;
}

Uncertainty uncertainty_product(double sigma, double half_width) {
  if (!(sigma > 0.0)) throw InvalidParameter("Gaussian width sigma must be positive");
  const Moments m = gaussian_moments(sigma, half_width);
  // psi' = -(th/sigma^2) psi, so <L^2>/hbar^2 = <th^2>/sigma^4.
  const double var = m.m2 / m.m0;
  Uncertainty u;
  u.delta_theta = std::sqrt(var);
  u.delta_L = u.delta_theta / (sigma * sigma);
  u.product = u.delta_theta * u.delta_L;
  return u;
}

Uncertainty uncertainty_product(const InitialState& state) {
  const Grid& g = state.psi.grid;
  double m0 = 0.0, m1 = 0.0, m2 = 0.0, d2 = 0.0;
  const double s2 = state.sigma * state.sigma;
  for (std::size_t i = 0; i < g.points(); ++i) {
    const double th = g.theta(i);
    const double p = state.psi.values[i] * state.psi.values[i];
    m0 += p;
    m1 += th * p;
    m2 += th * th * p;
    const double dpsi = -th / s2 * state.psi.values[i];
    d2 += dpsi * dpsi;
  }
  Uncertainty u;
  const double mean = m1 / m0;
  u.delta_theta = std::sqrt(m2 / m0 - mean * mean);
  u.delta_L = std::sqrt(d2 / m0);  // <L> = 0 for a real state
  u.product = u.delta_theta * u.delta_L;
  return u;
}

EnergyExpectation energy_expectation(const InitialState& state, double B) {
  const PotentialSpec spec{B, 0.0, state.psi.grid.half_width()};
  const GridHamiltonian H = build_hamiltonian(spec, state.psi.grid);
  const ComplexState c = to_complex(state.psi);
  EnergyExpectation e;
  e.grid = {observe(c.grid, c.values, H, kThetaFall).energy};
  const double s2 = state.sigma * state.sigma;
  e.closed_form = {1.0 / (2.0 * s2) + B * std::exp(-s2 / 4.0)};
  e.truncated = state.truncated_weight > 1e-6;
  return e;
}

Expansion expand(const Wavefunction& state, const Spectrum& basis) {
  if (!(state.grid == basis.grid)) {
    throw InvalidParameter("state and eigenbasis live on different grids (hash " + std::to_string(state.grid.hash()) +
                           " vs " + std::to_string(basis.grid.hash()) + ")");
  }
  Expansion ex;
  ex.grid_hash = basis.grid.hash();
  ex.state_norm = state.norm() * state.norm();
  ex.coefficients.reserve(basis.levels.size());
  for (std::size_t k = 0; k < basis.levels.size(); ++k) {
    const double c = overlap(basis.wavefunctions[k], state);
    ex.coefficients.push_back(c);
    ex.completeness += c * c;
    if (basis.levels[k].parity == Parity::odd) ex.odd_weight += c * c;
  }
  const double deficit = ex.state_norm - ex.completeness;
  if (deficit > 1e-3) {
    throw InsufficientBasis("eigenbasis of " + std::to_string(basis.levels.size()) +
                            " levels misses probability " + std::to_string(deficit));
  }
  return ex;
}

ComplexState to_complex(const Wavefunction& psi) {
  ComplexState c;
  c.grid = psi.grid;
  c.values.assign(psi.values.begin(), psi.values.end());
  return c;
}

double l2_distance(const ComplexState& a, const ComplexState& b) {
  if (!(a.grid == b.grid)) throw InvalidParameter("l2_distance: states on different grids");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += std::norm(a.values[i] - b.values[i]);
  return std::sqrt(s * a.grid.step());
}

EvolutionResult evolve_eigen(const Expansion& coefficients, const Spectrum& basis, std::span<const double> times,
                             EvolutionOptions opts) {
  if (coefficients.grid_hash != basis.grid.hash() || coefficients.coefficients.size() != basis.levels.size()) {
    throw InvalidParameter("coefficients were not computed in this eigenbasis");
  }
  check_times(times);
  const double f = frequency_factor(basis.spec.B);
  const GridHamiltonian H = build_hamiltonian(basis.spec, basis.grid);
  EvolutionResult r;
  ComplexState s{basis.grid, std::vector<complex>(basis.grid.points())};
  for (double t : times) {
    std::fill(s.values.begin(), s.values.end(), complex{});
    for (std::size_t k = 0; k < basis.levels.size(); ++k) {
      const double c = coefficients.coefficients[k];
      if (std::abs(c) < 1e-15) continue;
      const complex w = c * std::polar(1.0, -f * basis.levels[k].grid_energy * t);
      const auto& v = basis.wavefunctions[k].values;
      for (std::size_t i = 0; i < v.size(); ++i) s.values[i] += w * v[i];
    }
    record(r, t, s, H, opts.theta_fall, opts.keep_snapshots);
  }
  return r;
}

EvolutionResult evolve_direct(const ComplexState& state, const PotentialSpec& spec, std::span<const double> times,
                              DirectOptions opts) {
  if (!(opts.dt > 0.0)) throw InvalidParameter("time step dt must be positive");
  check_times(times);
  const Grid& grid = state.grid;
  if (state.values.size() != grid.points()) throw InvalidParameter("state size does not match its grid");
  const GridHamiltonian H = build_hamiltonian(spec, grid);
  const double f = frequency_factor(spec.B);
  const std::size_t m = grid.interior();

  ComplexState s = state;
  s.values.front() = s.values.back() = 0.0;
  const Observation start = observe(grid, s.values, H, opts.theta_fall);
  const double shift = start.energy;  // propagate H - <H>; the phase is put back below

  std::vector<double> absorb(m, 0.0);
  if (opts.absorbing) {
    const double width = grid.half_width() - opts.theta_fall;
    for (std::size_t j = 0; j < m; ++j) {
      const double over = std::abs(grid.theta(j + 1)) - opts.theta_fall;
      if (over > 0.0) absorb[j] = opts.absorb_strength * (over / width) * (over / width);
    }
  }

  EvolutionResult r;
  double factored_dt = -1.0;
  numerics::ComplexTridiagonalLU lu;
  std::vector<complex> rhs_diag(m), rhs_off(m > 0 ? m - 1 : 0);
  auto factor = [&](double dt) {
    const complex ik{0.0, 0.5 * f * dt};
    std::vector<complex> d(m), o(m - 1);
    for (std::size_t j = 0; j < m; ++j) {
      // absorb[] is a rate in omega_c; divide by f to put it next to H.
      const complex hj = complex(H.diag[j] - shift, -absorb[j] / f);
      d[j] = 1.0 + ik * hj;
      rhs_diag[j] = 1.0 - ik * hj;
    }
    for (std::size_t j = 0; j + 1 < m; ++j) {
      o[j] = ik * H.off[j];
      rhs_off[j] = -ik * H.off[j];
    }
    lu = numerics::ComplexTridiagonalLU(std::move(d), std::move(o));
    factored_dt = dt;
  };

  std::vector<complex> work(m);
  double t = 0.0;
  double max_drift = 0.0;
  auto emit = [&]() {
    ComplexState out = s;
    const complex phase = std::polar(1.0, -f * shift * t);
    for (auto& v : out.values) v *= phase;
    record(r, t, out, H, opts.theta_fall, opts.keep_snapshots);
    if (!opts.absorbing) {
      const double drift = std::abs(r.norm.back() - start.norm);
      max_drift = std::max(max_drift, drift);
      if (drift > opts.norm_tolerance) {
        throw StepSizeError("norm drifted by " + std::to_string(drift) + " at t = " + std::to_string(t) +
                            "; reduce dt (currently " + std::to_string(opts.dt) + ")");
      }
    }
  };

  for (double target : times) {
    const double span = target - t;
    if (span > 0.0) {
      const auto n = static_cast<std::size_t>(std::ceil(span / opts.dt - 1e-9));
      const double dt = span / static_cast<double>(n);
      if (std::abs(dt - factored_dt) > 1e-14 * dt) factor(dt);
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < m; ++j) {
          complex v = rhs_diag[j] * s.values[j + 1];
          if (j > 0) v += rhs_off[j - 1] * s.values[j];
          if (j + 1 < m) v += rhs_off[j] * s.values[j + 2];
          work[j] = v;
        }
        lu.solve(work);
        std::copy(work.begin(), work.end(), s.values.begin() + 1);
      }
      r.steps += n;
      r.dt = dt;
      t = target;
    }
    emit();
  }
  if (r.dt == 0.0) r.dt = opts.dt;
  return r;
}

std::vector<double> uniform_times(double t_end, std::size_t count) {
  if (count < 2 || !(t_end > 0.0)) throw InvalidParameter("uniform_times needs t_end > 0 and count >= 2");
  std::vector<double> t(count);
  for (std::size_t k = 0; k < count; ++k) t[k] = t_end * static_cast<double>(k) / static_cast<double>(count - 1);
  return t;
}

double crossing_time(const EvolutionResult& r, double level) {
  for (std::size_t k = 1; k < r.times.size(); ++k) {
    const double a = r.fall_prob[k - 1], b = r.fall_prob[k];
    if (a < level && b >= level) {
      return r.times[k - 1] + (level - a) / (b - a) * (r.times[k] - r.times[k - 1]);
    }
  }
  return -1.0;
}

ClassicalFall classical_fall_time(double delta_theta) {
  if (!(delta_theta > 0.0) || !(delta_theta < kPi / 2)) throw DomainError("classical fall time needs 0 < dth < pi/2");
  const double d = delta_theta;
  // th = d + u^2; cos d - cos th = 2 sin(d + u^2/2) sin(u^2/2).
  auto integrand = [d](double u) {
    if (u == 0.0) return 2.0 / std::sqrt(std::sin(d));
    const double u2 = u * u;
    return 2.0 * u / std::sqrt(2.0 * std::sin(d + 0.5 * u2) * std::sin(0.5 * u2));
  };
  const double top = std::sqrt(kPi / 2 - d);
  // Pieces at sqrt(d) 4^k follow the crossover from the flat core to the 2/u tail.
  double total = 0.0;
  double a = 0.0;
  double b = std::min(top, std::sqrt(d));
  while (true) {
    total += numerics::integrate_checked(integrand, a, b, {1e-14, 1e-13, 4000});
    if (b >= top) break;
    a = b;
    b = std::min(top, 4.0 * b);
  }
  ClassicalFall c;
  c.quadrature = total / std::sqrt(2.0);
  c.asymptotic = std::log(8.0 * (std::numbers::sqrt2 - 1.0)) - std::log(d);
  return c;
}

TimeValue quantum_fall_time_estimate(const DerivedScales& scales) {
  const double s = require_s(scales);
  return make_time(std::log(8.0 * (std::numbers::sqrt2 - 1.0)) - std::log(s), scales);
}

WkbFallTime quantum_fall_time_wkb(const DerivedScales& scales) {
  const double s = require_s(scales);
  WkbFallTime w;
  w.log_term = std::log(4.0 * (2.0 - std::numbers::sqrt2));
  w.scale_term = -std::log(s);
  w.gamma_term = 0.5 * std::log(summit::kFourGamma);
  w.quarter_pi = kPi / 4;
  w.t = make_time(w.log_term + w.scale_term + w.gamma_term + w.quarter_pi, scales);
  return w;
}

double stationary_phase_fall_time(double s, double delta_theta) {
  if (!(s > 0.0)) throw DomainError("stationary-phase time needs s > 0");
  if (!(delta_theta > 0.0) || !(delta_theta < kPi / 2)) throw DomainError("matching angle must lie in (0, pi/2)");
  // Classical time from dth to pi/2 at E0 = V0: int dth / sqrt(2 (1 - cos th)).
  auto integrand = [](double th) { return 0.5 / std::sin(0.5 * th); };
  const double classical = numerics::integrate_checked(integrand, delta_theta, kPi / 2, {1e-14, 1e-13, 4000});
  return classical + 0.5 * std::log(2.0 * delta_theta * delta_theta / (s * s)) + matching_phase_slope();
}

TimeValue spreading_time(double sigma, const DerivedScales& scales) {
  if (!(sigma > 0.0)) throw InvalidParameter("spreading time needs sigma > 0");
  const double s = require_s(scales);
  return make_time(2.0 * (sigma / s) * (sigma / s), scales);
}

FallTimes fall_times(const DerivedScales& scales, double delta_theta, double alpha) {
  FallTimes ft;
  ft.t_class = classical_fall_time(delta_theta);
  ft.t_Q_prime = quantum_fall_time_estimate(scales);
  ft.t_Q = quantum_fall_time_wkb(scales);
  ft.t_spread = spreading_time(alpha * require_s(scales), scales);
  return ft;
}

DerivedScales scales_from_B(double B) {
  if (!(B > 0.0)) throw DomainError("scales_from_B needs B > 0");
  DerivedScales d;
  d.J = kNaN;
  d.V0 = kNaN;
  d.omega_c = kNaN;
  d.B = B;
  d.s = std::pow(2.0 / B, 0.25);
  return d;
}

}  // namespace qrod::dynamics
