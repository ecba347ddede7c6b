#pragma once

#include <functional>
#include <vector>

#include "osk/profiles.hpp"
#include "osk/quadrature.hpp"
#include "osk/space_model.hpp"

namespace osk {

/// A spectral symbol depending only on ||lambda||, with a declared
/// integration cutoff (exact support or negligibility radius).
struct RadialSymbol {
  std::function<complex(double)> F;
  double support_radius = 0.0;
};

/// Forward spherical transform at one spectral point:
///   Hf(lambda) = integral of f(x) phi_lambda(x) over the space.
/// Integration runs over the extent of the stored profile; f must have
/// decayed there.
complex forward_at(const SpaceModel& m, const RadialProfile& f,
                   const SpectralPoint& p, const QuadratureSpec& spec);

/// Forward transform on a grid of spectral radii (rank 1).
SpectralProfile forward(const SpaceModel& m, const RadialProfile& f,
                        const std::vector<double>& lambda_grid,
                        const QuadratureSpec& spec);

/// Forward transform on a tensor grid (rank 2).
SpectralProfile forward(const SpaceModel& m, const RadialProfile& f,
                        const std::vector<double>& lambda1,
                        const std::vector<double>& lambda2,
                        const QuadratureSpec& spec);

/// Inverse transform of a ||lambda||-radial symbol at one point.
complex inverse_radial_at(const SpaceModel& m, const RadialSymbol& sym,
                          const RadialPoint& x, const QuadratureSpec& spec);

/// Inverse transform of a radial symbol on a grid: rank 1 gives a Grid1D
/// profile over r; rank 2 gives a WeightedRadial2D profile over R = ||H||
/// (exact polar reduction of the product-space inversion).
RadialProfile inverse_radial(const SpaceModel& m, const RadialSymbol& sym,
                             const std::vector<double>& grid,
                             const QuadratureSpec& spec);

/// Inverse transform of a sampled symbol (rank 1, or radial rank 2).
RadialProfile inverse(const SpaceModel& m, const SpectralProfile& sym,
                      const std::vector<double>& r_grid,
                      const QuadratureSpec& spec);

/// Inverse transform of a general (tensor) rank-2 symbol on a tensor grid.
RadialProfile inverse(const SpaceModel& m, const SpectralProfile& sym,
                      const std::vector<double>& r1,
                      const std::vector<double>& r2,
                      const QuadratureSpec& spec);

/// Inverse transform evaluated as an integral in the spectral-value variable
/// s = ||lambda||^2 + ||rho||^2 against g(s). Same kernel as inverse_radial_at
/// with F(||lambda||) = g(s(lambda)), but a genuinely different change of
/// variables and panel layout; this is the functional-calculus route used by
/// the dual-route kernel check.
complex inverse_s_axis_at(const SpaceModel& m,
                          const std::function<complex(double)>& g_of_s,
                          double s_lo, double s_hi, const RadialPoint& x,
                          const QuadratureSpec& spec);

/// Plancherel route: integral of |F(||lambda||)|^2 against the density over
/// the positive cone (closed polar reduction in rank 2).
double symbol_l2_sq(const SpaceModel& m, const RadialSymbol& sym,
                    const QuadratureSpec& spec);

/// J_2(x) / x^2, series near 0.
double j2_over_x2(double x);

}  // namespace osk
