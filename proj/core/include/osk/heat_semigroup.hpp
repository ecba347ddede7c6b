#pragma once

#include <vector>

#include "osk/quadrature.hpp"
#include "osk/reports.hpp"
#include "osk/space_model.hpp"

namespace osk {

/// Controls for the oscillated semigroup series
///   sum_{m>=0} (i tau)^m / m! * p_{(m+1) 2^{-j}}(x).
/// tau is the oscillation parameter, delta the admissible-|tau| coefficient
/// (|tau| <= delta 2^{(q+j)/2} in the sweeps).
struct SeriesSpec {
  double tau = 0.0;
  double delta = 0.1;
  double tol = 1e-14;  // absolute truncation tolerance
  int m_max = 2000;

  void validate() const {
    if (!(delta > 0.0 && delta < 0.125))
      throw std::invalid_argument("SeriesSpec: delta must lie in (0, 1/8)");
    if (!(tol > 0.0)) throw std::invalid_argument("SeriesSpec: tol must be > 0");
  }
};

/// The series above with a rigorous Stirling-type remainder cut: terms are
/// exact model heat kernels, and summation stops once the tail bound
/// sum_{m>M} |tau|^m/m! * sup_t p_t(x) falls below tol.
complex oscillated_heat_series(const SpaceModel& m, int j, const SeriesSpec& spec,
                               const RadialPoint& x);

/// Sweep of S(j,q) = sup_{x, tau} |series| / 2^{nj/2} over the (j, q) grid,
/// sampling the inner boundary sphere of the dyadic annulus plus 8 interior
/// points and tau in {0, +-delta 2^{(q+j)/2}/2, +-delta 2^{(q+j)/2}}.
/// Passes when the fitted coefficient of -log S against 2^{(q+j)/2} is
/// positive with residuals below 20% of the fitted trend.
NormReport verify_pointwise_decay(const SpaceModel& m,
                                  const std::vector<int>& j_list,
                                  const std::vector<std::vector<int>>& q_lists,
                                  const SeriesSpec& spec);

/// sup over the (t, r) grid of p_t(x) t^{n/2} exp(||H||^2/4t); passes iff
/// <= (4 pi)^{-n/2} (1 + 1e-12). Evaluated in log space.
NormReport verify_crude_bound(const SpaceModel& m,
                              const std::vector<double>& t_grid,
                              const std::vector<double>& r_grid);

/// ||p_t||_{L^2(X)} = sqrt(p_{2t}(0)), exact by the semigroup identity.
double heat_l2_norm(const SpaceModel& m, double t);

}  // namespace osk
