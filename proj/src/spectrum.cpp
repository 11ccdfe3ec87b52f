#include "qrod/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qrod/errors.hpp"
#include "qrod/numerics.hpp"

namespace qrod {

std::string_view to_string(Parity p) {
  switch (p) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    case Parity::none: return "none";
  }
  return "none";
}

double potential(double theta, const PotentialSpec& spec) {
  if (std::abs(theta) > spec.half_width * (1.0 + 1e-14)) {
    throw DomainError("theta = " + std::to_string(theta) + " is beyond the wall");
  }
  return spec.B * (std::cos(theta) + spec.tilt * std::sin(theta));
}

GridHamiltonian build_hamiltonian(const PotentialSpec& spec, const Grid& grid) {
  const double inv_h2 = 1.0 / (grid.step() * grid.step());
  GridHamiltonian H;
  const std::size_t m = grid.interior();
  H.diag.resize(m);
  H.off.assign(m - 1, -inv_h2);
  for (std::size_t i = 0; i < m; ++i) H.diag[i] = 2.0 * inv_h2 + potential(grid.theta(i + 1), spec);
  return H;
}

namespace {

void validate(const PotentialSpec& spec) {
  if (!(spec.B >= 0.0) || !std::isfinite(spec.B)) throw InvalidParameter("barrier height B must be finite and >= 0");
  if (!(std::abs(spec.tilt) < 0.1)) throw InvalidParameter("tilt must satisfy |tilt| < 0.1 rad");
}

// One block of the Hamiltonian and how its eigenvectors map back to the full grid.
struct Block {
  Parity parity = Parity::none;
  std::vector<double> diag;
  std::vector<double> off;
};

// Exact reduction of the mirror-symmetric matrix into its even and odd sectors.
// Even sector unknowns are psi_c, psi_{c+1}, ...; the centre row couples to psi_{c+1}
// twice, which the 1/sqrt(2) rescaling of psi_c makes symmetric.
std::vector<Block> parity_blocks(const PotentialSpec& spec, const Grid& grid) {
  const double inv_h2 = 1.0 / (grid.step() * grid.step());
  const std::size_t c = grid.centre();
  Block even{Parity::even, {}, {}};
  even.diag.resize(c);
  even.off.assign(c - 1, -inv_h2);
  for (std::size_t j = 0; j < c; ++j) even.diag[j] = 2.0 * inv_h2 + potential(grid.theta(c + j), spec);
  if (c > 1) even.off[0] = -std::sqrt(2.0) * inv_h2;

  Block odd{Parity::odd, {}, {}};
  odd.diag.resize(c - 1);
  odd.off.assign(c - 2, -inv_h2);
  for (std::size_t j = 1; j < c; ++j) odd.diag[j - 1] = 2.0 * inv_h2 + potential(grid.theta(c + j), spec);
  return {even, odd};
}

std::vector<Block> blocks_for(const PotentialSpec& spec, const Grid& grid) {
  if (spec.tilt == 0.0) return parity_blocks(spec, grid);
  auto H = build_hamiltonian(spec, grid);
  return {Block{Parity::none, std::move(H.diag), std::move(H.off)}};
}

std::vector<double> to_full_grid(const Block& b, const Grid& grid, std::span<const double> v) {
  std::vector<double> psi(grid.points(), 0.0);
  const std::size_t c = grid.centre();
  switch (b.parity) {
    case Parity::even:
      psi[c] = std::sqrt(2.0) * v[0];
      for (std::size_t j = 1; j < v.size(); ++j) psi[c + j] = psi[c - j] = v[j];
      break;
    case Parity::odd:
      for (std::size_t j = 1; j <= v.size(); ++j) {
        psi[c + j] = v[j - 1];
        psi[c - j] = -v[j - 1];
      }
      break;
    case Parity::none:
      for (std::size_t i = 0; i < v.size(); ++i) psi[i + 1] = v[i];
      break;
  }
  return psi;
}

// Unit trapezoid norm; first significant sample from the left wall positive.
void normalise(Wavefunction& w) {
  const double n = w.norm();
  double peak = 0.0;
  for (double& x : w.values) {
    x /= n;
    peak = std::max(peak, std::abs(x));
  }
  for (double x : w.values) {
    if (std::abs(x) > 1e-10 * peak) {
      if (x < 0.0) {
        for (double& y : w.values) y = -y;
      }
      break;
    }
  }
}

std::vector<double> block_values(const Block& b, std::size_t count) {
  return numerics::eig_tridiagonal(b.diag, b.off, 0, count - 1, false).values;
}

struct Candidate {
  EnergyLevel level;
  Wavefunction psi;
};

}  // namespace

std::optional<std::size_t> Spectrum::find(Parity parity, int index) const {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i].parity == parity && levels[i].index == index) return i;
  }
  return std::nullopt;
}

std::vector<EnergyLevel> Spectrum::of_parity(Parity parity) const {
  std::vector<EnergyLevel> out;
  for (const auto& l : levels) {
    if (l.parity == parity) out.push_back(l);
  }
  return out;
}

double parity_overlap(const Wavefunction& psi) {
  const std::size_t n = psi.values.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += psi.values[i] * psi.values[n - 1 - i];
  return sum * psi.grid.step();
}

Spectrum solve_spectrum(const PotentialSpec& spec, std::size_t n_levels, SpectrumOptions opts) {
  validate(spec);
  if (n_levels == 0) throw InvalidParameter("n_levels must be positive");
  if (opts.grid_n < 10 * n_levels) {
    throw InvalidParameter("grid_n = " + std::to_string(opts.grid_n) + " is below 10 * n_levels = " +
                           std::to_string(10 * n_levels));
  }
  const Grid base(opts.grid_n, spec.half_width);
  const auto blocks = blocks_for(spec, base);

  std::vector<std::vector<Block>> refined;
  if (opts.extrapolate) {
    refined.push_back(blocks_for(spec, Grid(2 * opts.grid_n - 1, spec.half_width)));
    refined.push_back(blocks_for(spec, Grid(4 * opts.grid_n - 3, spec.half_width)));
  }

  std::vector<Candidate> candidates;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const Block& b = blocks[bi];
    const std::size_t count = std::min(n_levels, b.diag.size());
    const auto eig = numerics::eig_tridiagonal(b.diag, b.off, 0, count - 1, true);
    std::vector<double> e2, e3;
    if (opts.extrapolate) {
      e2 = block_values(refined[0][bi], count);
      e3 = block_values(refined[1][bi], count);
    }
    for (std::size_t k = 0; k < count; ++k) {
      Candidate c;
      c.level.index = static_cast<int>(k) + 1;
      c.level.parity = b.parity;
      c.level.grid_energy = eig.values[k];
      if (opts.extrapolate) {
        const double r1 = (4.0 * e2[k] - eig.values[k]) / 3.0;
        const double r2 = (4.0 * e3[k] - e2[k]) / 3.0;
        c.level.energy = {r2};
        c.level.drift = std::abs(r2 - r1) / std::max(1.0, std::abs(r2));
      } else {
        c.level.energy = {eig.values[k]};
      }
      c.psi.grid = base;
      c.psi.values = to_full_grid(b, base, eig.vector(k));
      normalise(c.psi);
      if (b.parity != Parity::none) {
        const double p = parity_overlap(c.psi);
        if ((b.parity == Parity::even) != (p > 0.0)) {
          throw NumericalError("parity classification disagrees with the symmetry sector");
        }
      }
      candidates.push_back(std::move(c));
    }
  }

  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.level.energy.value != b.level.energy.value) return a.level.energy.value < b.level.energy.value;
    return a.level.parity == Parity::even && b.level.parity != Parity::even;
  });
  candidates.resize(std::min(candidates.size(), n_levels));

  Spectrum out;
  out.spec = spec;
  out.grid = base;
  for (auto& c : candidates) {
    if (opts.extrapolate && opts.check_resolution && c.level.drift > opts.resolution_tol) {
      throw ResolutionError("level " + std::to_string(c.level.index) + " (" + std::string(to_string(c.level.parity)) +
                            ") drifts by " + std::to_string(c.level.drift) + " between refinements; increase grid_n");
    }
    out.levels.push_back(c.level);
    out.wavefunctions.push_back(std::move(c.psi));
  }
  return out;
}

double eigenvalue_noise(const Spectrum& spectrum) {
  // Rounding in the finest grid's matrix, whose largest entries are ~4/h^2.
  const double h = spectrum.grid.step() / 4.0;
  return 1e3 * std::numeric_limits<double>::epsilon() * 4.0 / (h * h);
}

std::vector<Doublet> pairing_table(const Spectrum& spectrum, int first, int last) {
  if (spectrum.spec.tilt != 0.0) throw InvalidParameter("pairing table needs a tilt-free spectrum");
  if (first < 1 || last < first) throw RangeError("pairing table: bad doublet range");
  const double noise = eigenvalue_noise(spectrum);

  std::vector<Doublet> out;
  for (int n = first; n <= last; ++n) {
    const auto ep = spectrum.find(Parity::even, n);
    const auto em = spectrum.find(Parity::odd, n);
    const auto enext = spectrum.find(Parity::even, n + 1);
    if (!ep || !em || !enext) {
      throw RangeError("pairing table: doublet " + std::to_string(n) + " needs E_" + std::to_string(n + 1) +
                       "^+ and E_" + std::to_string(n) + "^-; solve more levels");
    }
    Doublet d;
    d.n = n;
    d.E_plus = spectrum.levels[*ep].energy;
    d.E_minus = spectrum.levels[*em].energy;
    if (d.E_minus.value < d.E_plus.value) {
      if (d.E_plus.value - d.E_minus.value > noise) {
        throw NumericalError("doublet " + std::to_string(n) + ": odd level below even level");
      }
      d.E_minus = d.E_plus;
    }
    d.splitting = d.E_minus.value - d.E_plus.value;
    d.gap = spectrum.levels[*enext].energy.value - d.E_plus.value;
    d.pairing_ratio = d.splitting / d.gap;
    out.push_back(d);
  }
  return out;
}

std::vector<Doublet> pairing_table(const Spectrum& spectrum) {
  int last = 0;
  while (spectrum.find(Parity::even, last + 2) && spectrum.find(Parity::odd, last + 1)) ++last;
  if (last == 0) throw RangeError("pairing table: spectrum holds no complete doublet");
  return pairing_table(spectrum, 1, last);
}

double eigenfunction_at(const Spectrum& spectrum, std::size_t pos, double theta) {
  if (pos >= spectrum.wavefunctions.size()) throw RangeError("eigenfunction_at: level position out of range");
  return spectrum.wavefunctions[pos].at(theta);
}

double mathieu_residual(const Spectrum& spectrum, std::size_t pos) {
  if (pos >= spectrum.levels.size()) throw RangeError("mathieu_residual: level position out of range");
  const auto& psi = spectrum.wavefunctions[pos].values;
  const auto& g = spectrum.grid;
  const double a = 4.0 * spectrum.levels[pos].grid_energy;
  const double q = 2.0 * spectrum.spec.B;
  const double d_eta = 0.5 * g.step();
  double peak = 0.0;
  for (double v : psi) peak = std::max(peak, std::abs(v));
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < psi.size(); ++i) {
    const double eta = 0.5 * g.theta(i);
    const double tilt_term = 2.0 * q * spectrum.spec.tilt * std::sin(2.0 * eta);
    const double second = (psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) / (d_eta * d_eta);
    const double r = second + (a - 2.0 * q * std::cos(2.0 * eta) - tilt_term) * psi[i];
    worst = std::max(worst, std::abs(r));
  }
  return worst / (std::max(std::abs(a), 1.0) * peak);
}

}  // namespace qrod
