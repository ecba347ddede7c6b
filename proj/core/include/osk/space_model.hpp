#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "osk/common.hpp"

namespace osk {

enum class SpaceKind { H3, H3xH3 };

/// Radial Cartan coordinate of a point, one nonnegative entry per rank-one
/// factor. norm() is the geodesic distance from the origin.
struct RadialPoint {
  std::array<double, 2> r{0.0, 0.0};
  int dim = 1;

  static RadialPoint of(double r0);
  static RadialPoint of(double r0, double r1);
  double norm() const {
    return dim == 1 ? r[0] : std::sqrt(r[0] * r[0] + r[1] * r[1]);
  }
};

/// Point in the spectral parameter space. tube_v shifts the evaluation to
/// lambda + i*v*rho; tube_v = 0 is the real (tempered) spectrum.
struct SpectralPoint {
  std::array<double, 2> lambda{0.0, 0.0};
  int dim = 1;
  double tube_v = 0.0;

  static SpectralPoint of(double l0, double v = 0.0);
  static SpectralPoint of(double l0, double l1, double v);
  double norm() const {
    return dim == 1 ? std::abs(lambda[0])
                    : std::sqrt(lambda[0] * lambda[0] + lambda[1] * lambda[1]);
  }
};

/// Radial region, defined through the geodesic distance ||H||.
///   Ball(R)    = { ||H|| <= R }
///   Annulus(q) = { 2^{q/2} <= ||H|| <= 2^{(q+1)/2} }  (dyadic)
///   Tail(R)    = { ||H|| >= R }
struct RegionSpec {
  enum class Kind { All, Ball, Annulus, Tail } kind = Kind::All;
  double radius = 0.0;
  int q = 0;

  static RegionSpec all() { return {Kind::All, 0.0, 0}; }
  static RegionSpec ball(double R);
  static RegionSpec annulus(int q);
  static RegionSpec tail(double R);

  double lo() const;                 // inner ||H|| bound
  double hi(double r_cut) const;     // outer ||H|| bound, capped at r_cut
  bool unbounded() const { return kind == Kind::All || kind == Kind::Tail; }
};

/// Geometry and spectral data of one of the two model spaces.
struct SpaceModel {
  SpaceKind kind = SpaceKind::H3;
  int n = 3;                     // dimension
  int d = 1;                     // rank
  std::array<double, 2> rho{1.0, 0.0};
  double rho_norm = 1.0;
  double rho_norm_sq = 1.0;
  int weyl_order = 2;
  int b = 2;                     // n - d
  int b_prime = 1;               // smallest integer >= b/2

  static SpaceModel h3();
  static SpaceModel h3xh3();
  static SpaceModel from_id(std::string_view id);
  std::string id() const;
};

// -- scalar building blocks --------------------------------------------------

/// r / sinh(r), with the removable singularity at r = 0 expanded.
double r_over_sinh(double r);

/// sin(z)/z for complex z, series near z = 0.
complex sinc_c(complex z);

/// sinh(nu * r) / (nu * sinh r), stable for nu -> 0 and for large r.
double sinh_ratio(double nu, double r);

// -- model operations ---------------------------------------------------------

/// Spherical function phi_lambda(x) at lambda - i*v*rho; product of rank-one
/// factors sin(mu r)/(mu sinh r). Real for tube_v = 0, equals 1 at tube_v = 1,
/// lambda = 0.
complex spherical_function(const SpaceModel& m, const SpectralPoint& p,
                           const RadialPoint& x);

/// Plancherel density: product of lambda_i^2 / (2 pi^2). Real spectrum only.
double plancherel_density(const SpaceModel& m, const SpectralPoint& p);

/// Radial volume density: product of 4 pi sinh^2(r_i).
double volume_density(const SpaceModel& m, const RadialPoint& x);

/// Heat kernel p_t(x), exact closed form on the models.
double heat_kernel(const SpaceModel& m, double t, const RadialPoint& x);

/// log p_t(x); safe where p_t itself under/overflows.
double heat_kernel_log(const SpaceModel& m, double t, const RadialPoint& x);

/// sup over s >= t_min of p_s(x) (closed-form critical point).
double heat_kernel_sup(const SpaceModel& m, const RadialPoint& x, double t_min);

}  // namespace osk
