#pragma once

#include <complex>

namespace qrod::special {

/// Principal-branch log Gamma(z) for Re z > 0, continuous along every horizontal
/// line: upward recurrence to Re z >= 15, then the Stirling series.
[[nodiscard]] std::complex<double> log_gamma(std::complex<double> z);

/// arg Gamma(1/2 + i eps), continuous in eps (not reduced mod 2 pi).
[[nodiscard]] double arg_gamma_half(double eps);

/// ln |Gamma(1/2 + i eps)| from |Gamma(1/2 + i eps)|^2 = pi / cosh(pi eps).
[[nodiscard]] double log_abs_gamma_half(double eps);

}  // namespace qrod::special
