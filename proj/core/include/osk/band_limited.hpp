#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "osk/multiplier.hpp"
#include "osk/quadrature.hpp"
#include "osk/reports.hpp"

namespace osk {

/// Band-limiting mollifier with plateau Fourier transform:
/// psi_hat = 1 on [-xi/2, xi/2], 0 outside [-xi, xi], smoothstep in between.
/// The space side is a shared unit-kernel table scaled by
/// psi_xi(x) = xi * psi_1(xi x) (exact scaling law).
struct BandlimitKernel {
  double xi = 1.0;

  double psi_hat(double tau) const;
  double psi(double x) const;
  double trunc_radius() const;  // reach of the table in x units

  /// measured L1 mass of |psi_1| beyond the table end (tail certificate)
  static double psi1_tail_l1();
};

BandlimitKernel build_bandlimit_kernel(double xi);

/// Independent single-point evaluation of psi_xi (fresh quadrature, no table);
/// used to cross-check the table and the scaling law.
double psi_direct(double xi, double x);

/// A function on the line with a declared evaluation range. Outside
/// [lo, hi] it is treated as zero (compact support) for convolution purposes.
struct LineFunction {
  std::function<complex(double)> f;
  double lo = 0.0;
  double hi = 0.0;
  double osc_rate = 0.0;  // optional oscillation hint for quadrature
};

/// (f * psi)(x) by adaptive quadrature over the support of f.
complex convolve_at(const LineFunction& f, const BandlimitKernel& psi, double x,
                    const QuadratureSpec& spec);

/// The convolution as a new LineFunction (quadrature closure).
LineFunction convolve_line(const LineFunction& f, const BandlimitKernel& psi,
                           const QuadratureSpec& spec);

/// sup-norm error sweep ||f - f*psi_xi|| over xi_list and its log-log fit.
/// Passes iff the fitted slope is <= -k + 0.3; if the errors sit at the
/// machine floor the fit is flagged degenerate and passes.
struct RateSweep {
  std::vector<double> xi;
  std::vector<double> err;
  ExponentFit fit;  // slope of log(err) against log(xi)
  bool degenerate = false;
  bool passed = false;
};
RateSweep verify_approx_rate(const LineFunction& f, int k,
                             const std::vector<double>& xi_list,
                             const QuadratureSpec& spec);

/// The split h_j = (h_j - h_j*psi) + h_j*psi at bandwidth
/// xi = delta 2^{(q+j)/2}:
///  - first: sup-norm of the difference times ||p_{2^{-j}}||_{L2}
///  - second: sup over the annulus inner boundary of the smoothed part of the
///    kernel, evaluated through the spectral calculus.
std::pair<double, double> symbol_split_bounds(const SpaceModel& m,
                                              const DyadicSymbol& sym, int q,
                                              int k, double delta,
                                              const QuadratureSpec& spec);

}  // namespace osk
