#include "qrod/units.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qrod/errors.hpp"

namespace qrod {

DerivedScales derive_scales(const RodParams& p) {
  if (!(p.mass > 0.0)) throw InvalidParameter("rod mass must be positive, got " + std::to_string(p.mass));
  if (!(p.length > 0.0)) throw InvalidParameter("rod length must be positive, got " + std::to_string(p.length));
  if (!(p.gravity >= 0.0)) throw InvalidParameter("gravity must be non-negative, got " + std::to_string(p.gravity));
  if (!(p.hbar > 0.0)) throw InvalidParameter("hbar must be positive");

  DerivedScales d;
  d.hbar = p.hbar;
  d.J = p.mass * p.length * p.length / 3.0;
  d.V0 = p.mass * p.gravity * p.length / 2.0;
  d.omega_c = std::sqrt(1.5 * p.gravity / p.length);
  d.B = d.V0 * 2.0 * d.J / (p.hbar * p.hbar);
  d.s = d.omega_c > 0.0 ? std::sqrt(p.hbar / (d.J * d.omega_c)) : std::numeric_limits<double>::infinity();
  return d;
}

DimensionlessEnergy to_dimensionless(double energy_joule, const DerivedScales& scales) {
  return {energy_joule / scales.energy_unit()};
}

double from_dimensionless(DimensionlessEnergy e, const DerivedScales& scales) {
  return e.value * scales.energy_unit();
}

double summit_scale_squared(double B) {
  if (!(B > 0.0)) throw DomainError("summit scale needs B > 0");
  return std::sqrt(2.0 / B);
}

double frequency_factor(double B) {
  if (B < 0.0) throw DomainError("B must be non-negative");
  return B > 0.0 ? 1.0 / std::sqrt(2.0 * B) : 1.0;
}

}  // namespace qrod
