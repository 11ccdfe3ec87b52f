#include "qrod/grid.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "qrod/errors.hpp"

namespace qrod {

Grid::Grid(std::size_t points, double half_width) : points_(points), half_width_(half_width) {
  if (points < 5 || points % 2 == 0) {
    throw InvalidParameter("grid needs an odd number of points >= 5, got " + std::to_string(points));
  }
  if (!(half_width > 0.0) || half_width > std::numbers::pi / 2 + 1e-12) {
    throw InvalidParameter("grid half-width must lie in (0, pi/2]");
  }
  step_ = 2.0 * half_width / static_cast<double>(points - 1);
}

std::size_t Grid::hash() const {
  // FNV-1a over the two defining fields.
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(points_));
  mix(std::bit_cast<std::uint64_t>(half_width_));
  return static_cast<std::size_t>(h);
}

double trapezoid(const Grid& g, std::span<const double> f) {
  if (f.size() != g.points()) throw InvalidParameter("trapezoid: sample count does not match grid");
  double sum = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) sum += f[i];
  return sum * g.step();
}

double simpson(const Grid& g, std::span<const double> f) {
  if (f.size() != g.points()) throw InvalidParameter("simpson: sample count does not match grid");
  double sum = f.front() + f.back();
  for (std::size_t i = 1; i + 1 < f.size(); ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
  return sum * g.step() / 3.0;
}

double Wavefunction::norm() const {
  double sum = 0.0;
  for (double v : values) sum += v * v;
  return std::sqrt(sum * grid.step());
}

namespace {

// Lagrange weights on nodes i0..i0+3 (and their derivatives) at reduced coordinate u = (theta - theta_i0)/h.
void cubic_weights(double u, std::array<double, 4>& w, std::array<double, 4>& dw) {
  const std::array<double, 4> x = {0.0, 1.0, 2.0, 3.0};
  for (int j = 0; j < 4; ++j) {
    double num = 1.0, den = 1.0, dnum = 0.0;
    for (int k = 0; k < 4; ++k) {
      if (k == j) continue;
      den *= x[j] - x[k];
      double prod = 1.0;
      for (int l = 0; l < 4; ++l) {
        if (l == j || l == k) continue;
        prod *= u - x[l];
      }
      dnum += prod;
      num *= u - x[k];
    }
    w[j] = num / den;
    dw[j] = dnum / den;
  }
}

std::size_t stencil_start(const Grid& g, double theta, double& u) {
  if (std::abs(theta) > g.half_width() * (1.0 + 1e-14)) {
    throw DomainError("theta = " + std::to_string(theta) + " lies outside the grid");
  }
  const double pos = (theta + g.half_width()) / g.step();
  auto i = static_cast<std::ptrdiff_t>(std::floor(pos)) - 1;
  i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(g.points()) - 4);
  u = pos - static_cast<double>(i);
  return static_cast<std::size_t>(i);
}

}  // namespace

double Wavefunction::at(double theta) const {
  double u = 0.0;
  const std::size_t i0 = stencil_start(grid, theta, u);
  std::array<double, 4> w{}, dw{};
  cubic_weights(u, w, dw);
  double v = 0.0;
  for (int j = 0; j < 4; ++j) v += w[j] * values[i0 + j];
  return v;
}

double Wavefunction::derivative_at(double theta) const {
  double u = 0.0;
  const std::size_t i0 = stencil_start(grid, theta, u);
  std::array<double, 4> w{}, dw{};
  cubic_weights(u, w, dw);
  double v = 0.0;
  for (int j = 0; j < 4; ++j) v += dw[j] * values[i0 + j];
  return v / grid.step();
}

double overlap(const Wavefunction& a, const Wavefunction& b) {
  if (!(a.grid == b.grid)) throw InvalidParameter("overlap: wavefunctions live on different grids");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) sum += a.values[i] * b.values[i];
  return sum * a.grid.step();
}

}  // namespace qrod
