#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace qrod {

/// Uniform angle grid on [-half_width, half_width] including both walls.
/// An odd point count puts a node at theta = 0, which the parity machinery relies on.
class Grid {
 public:
  Grid() = default;
  /// Throws InvalidParameter for fewer than 5 points, an even count or a bad half-width.
  explicit Grid(std::size_t points, double half_width = std::numbers::pi / 2);

  [[nodiscard]] std::size_t points() const { return points_; }
  [[nodiscard]] std::size_t interior() const { return points_ - 2; }
  [[nodiscard]] double half_width() const { return half_width_; }
  [[nodiscard]] double step() const { return step_; }
  [[nodiscard]] double theta(std::size_t i) const { return -half_width_ + static_cast<double>(i) * step_; }
  [[nodiscard]] std::size_t centre() const { return points_ / 2; }

  /// Digest of (points, half_width); two grids with equal hash sample the same nodes.
  [[nodiscard]] std::size_t hash() const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.points_ == b.points_ && a.half_width_ == b.half_width_;
  }

 private:
  std::size_t points_ = 0;
  double half_width_ = 0.0;
  double step_ = 0.0;
};

/// Trapezoid rule over the full grid.
[[nodiscard]] double trapezoid(const Grid& g, std::span<const double> f);
/// Composite Simpson rule over the full grid (odd point count).
[[nodiscard]] double simpson(const Grid& g, std::span<const double> f);

/// Real amplitudes sampled on a grid, zero at the walls.
struct Wavefunction {
  Grid grid;
  std::vector<double> values;

  /// Trapezoid norm, the inner product every solver here is exact in.
  [[nodiscard]] double norm() const;
  /// Four-point Lagrange interpolation. Throws DomainError outside the grid.
  [[nodiscard]] double at(double theta) const;
  [[nodiscard]] double derivative_at(double theta) const;
};

[[nodiscard]] double overlap(const Wavefunction& a, const Wavefunction& b);

}  // namespace qrod
