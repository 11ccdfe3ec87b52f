#pragma once

// Stationary states of the hard-walled rod, -psi'' + B (cos th + tilt sin th) psi = E psi,
// psi(+-half_width) = 0, energies in hbar^2/2J.
//
// The operator is discretised with second-order central differences on a uniform
// grid, giving a symmetric tridiagonal matrix. For a level table the eigenvalues are
// additionally computed on two nested refinements and Richardson-extrapolated
// (error ~ h^2, h^4, ...), which is what brings a 4001-point grid to two-decimal
// agreement near E ~ 1e4. Eigenvectors always come from the base grid.

#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qrod/grid.hpp"
#include "qrod/units.hpp"

namespace qrod {

struct PotentialSpec {
  double B = 0.0;                           // V0 / (hbar^2 / 2J)
  double tilt = 0.0;                        // table slant, rad, shifted frame
  double half_width = std::numbers::pi / 2; // wall angle
};

enum class Parity { even, odd, none };

[[nodiscard]] std::string_view to_string(Parity p);

struct EnergyLevel {
  int index = 0;                   // 1-based within its parity class
  Parity parity = Parity::none;
  DimensionlessEnergy energy;      // extrapolated when enabled, else the grid value
  double grid_energy = 0.0;        // eigenvalue of the base-grid matrix
  double drift = 0.0;              // relative change between the two extrapolants
};

struct Doublet {
  int n = 0;
  DimensionlessEnergy E_plus;
  DimensionlessEnergy E_minus;
  double splitting = 0.0;       // E_minus - E_plus
  double gap = 0.0;             // E_{n+1}^+ - E_n^+
  double pairing_ratio = 0.0;   // splitting / gap
};

struct SpectrumOptions {
  std::size_t grid_n = 4001;
  bool extrapolate = true;
  bool check_resolution = true;
  double resolution_tol = 1e-6;
};

struct Spectrum {
  PotentialSpec spec;
  Grid grid;
  std::vector<EnergyLevel> levels;         // ascending energy
  std::vector<Wavefunction> wavefunctions; // aligned with levels

  /// Position in `levels` of the state with this parity and 1-based index.
  [[nodiscard]] std::optional<std::size_t> find(Parity parity, int index) const;
  [[nodiscard]] std::vector<EnergyLevel> of_parity(Parity parity) const;
};

/// B (cos th + tilt sin th). Throws DomainError for |theta| > half_width.
[[nodiscard]] double potential(double theta, const PotentialSpec& spec);

/// Diagonal and off-diagonal of the interior finite-difference Hamiltonian.
struct GridHamiltonian {
  std::vector<double> diag;
  std::vector<double> off;
};
[[nodiscard]] GridHamiltonian build_hamiltonian(const PotentialSpec& spec, const Grid& grid);

/// Lowest n_levels states. Throws InvalidParameter when grid_n < 10 n_levels and
/// ResolutionError when extrapolated levels drift by more than resolution_tol.
[[nodiscard]] Spectrum solve_spectrum(const PotentialSpec& spec, std::size_t n_levels, SpectrumOptions opts = {});

/// Finest energy difference the extrapolated eigenvalues resolve. A doublet reversed
/// by less than this is a numerically degenerate pair.
[[nodiscard]] double eigenvalue_noise(const Spectrum& spectrum);

/// Doublets n = first..last from a tilt-free spectrum. Throws RangeError when the
/// spectrum does not contain E_{last+1}^+ and E_last^-.
[[nodiscard]] std::vector<Doublet> pairing_table(const Spectrum& spectrum, int first, int last);
/// Every doublet the spectrum supports.
[[nodiscard]] std::vector<Doublet> pairing_table(const Spectrum& spectrum);

/// Interpolated amplitude of level `pos`. Throws DomainError outside the walls.
[[nodiscard]] double eigenfunction_at(const Spectrum& spectrum, std::size_t pos, double theta);

/// h * sum psi(-th) psi(th): +1 even, -1 odd, ~0 for a one-sided state.
[[nodiscard]] double parity_overlap(const Wavefunction& psi);

/// Max pointwise residual of the Mathieu form psi_eta_eta + (a - 2q cos 2 eta) psi with
/// eta = theta/2, a = 4E, q = 2B, relative to |a| max|psi|. Uses the grid eigenvalue.
[[nodiscard]] double mathieu_residual(const Spectrum& spectrum, std::size_t pos);

}  // namespace qrod
