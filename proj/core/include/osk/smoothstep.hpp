#pragma once

#include <cmath>

#include "osk/common.hpp"

namespace osk {

// The C^inf transition used by every cutoff in the project:
//   g(u) = B(u) / (B(u) + B(1-u)),  B(u) = exp(-1/u) for u > 0, else 0,
// so g == 0 for u <= 0 and g == 1 for u >= 1, with exact plateau values.
inline double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

/// chi(t): 1 on [0, 1], 0 on [sqrt2, inf), smooth and decreasing in between.
inline double chi_cutoff(double t) {
  return 1.0 - smoothstep((t - 1.0) / (sqrt2 - 1.0));
}

/// omega(t) = chi(t) - chi(sqrt2 * t); supported in [1/sqrt2, sqrt2],
/// telescoping: sum_j omega(2^{-j/2} t) + chi(sqrt2 t) = chi(2^{-J/2} t).
inline double omega_bump(double t) {
  return chi_cutoff(t) - chi_cutoff(sqrt2 * t);
}

/// zeta(r): 1 on [0, 1/2], 0 on [1, inf). The local/global kernel cutoff.
inline double zeta_cutoff(double r) {
  return 1.0 - smoothstep(2.0 * r - 1.0);
}

}  // namespace osk
