#include "osk/band_limited.hpp"

#include <cmath>
#include <mutex>

#include "osk/heat_semigroup.hpp"
#include "osk/profiles.hpp"
#include "osk/smoothstep.hpp"
#include "osk/transforms.hpp"

namespace osk {

namespace {

double psi_hat_unit(double tau) {
  tau = std::abs(tau);
  if (tau <= 0.5) return 1.0;
  if (tau >= 1.0) return 0.0;
  return 1.0 - smoothstep(2.0 * tau - 1.0);
}

constexpr double kPsiTableEnd = 360.0;

double psi_unit_direct(double x) {
  // (1/pi) [ sin(x/2)/x + int_{1/2}^{1} psi_hat cos(tau x) dtau ]
  const double head = 0.5 * sinc_c(complex{0.5 * x, 0.0}).real();
  QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  spec.abs_tol = 1e-16;
  auto res = integrate_1d(
      [&](double tau) { return complex{psi_hat_unit(tau) * std::cos(tau * x), 0.0}; },
      0.5, 1.0, std::abs(x) > 0 ? std::optional<double>(std::abs(x)) : std::nullopt,
      spec);
  return (head + res.value.real()) / pi;
}

struct PsiTable {
  Interp1D interp;
  double tail_l1 = 0.0;
};

const PsiTable& psi_table() {
  static const PsiTable table = [] {
    std::vector<double> grid;
    for (double x = 0.0; x < 12.0; x += 0.005) grid.push_back(x);
    for (double x = 12.0; x < 60.0; x += 0.05) grid.push_back(x);
    for (double x = 60.0; x <= kPsiTableEnd; x += 0.25) grid.push_back(x);
    std::vector<complex> vals(grid.size());
    parallel_for(static_cast<int>(grid.size()), [&](int i) {
      vals[i] = complex{psi_unit_direct(grid[i]), 0.0};
    });
    PsiTable t;
    t.interp = Interp1D(grid, vals);
    // tail mass certificate: compare the last two windows of |psi_1|
    QuadratureSpec spec;
    spec.rel_tol = 1e-8;
    spec.abs_tol = 1e-18;
    auto window = [&](double a, double b) {
      return integrate_1d(
                 [&](double x) {
                   return complex{std::abs(t.interp(x)), 0.0};
                 },
                 a, b, 1.0, spec)
          .value.real();
    };
    const double last = window(kPsiTableEnd - 40.0, kPsiTableEnd);
    const double prev = window(kPsiTableEnd - 80.0, kPsiTableEnd - 40.0);
    const double ratio = prev > 0.0 ? std::min(last / prev, 0.99) : 0.0;
    t.tail_l1 = 2.0 * last * ratio / (1.0 - ratio);  // both tails
    return t;
  }();
  return table;
}

}  // namespace

double BandlimitKernel::psi_hat(double tau) const { return psi_hat_unit(tau / xi); }

double BandlimitKernel::psi(double x) const {
  return xi * psi_table().interp(std::abs(x) * xi).real();
}

double BandlimitKernel::trunc_radius() const { return kPsiTableEnd / xi; }

double BandlimitKernel::psi1_tail_l1() { return psi_table().tail_l1; }

BandlimitKernel build_bandlimit_kernel(double xi) {
  if (!(xi > 0.0)) throw std::invalid_argument("build_bandlimit_kernel: xi > 0");
  psi_table();  // force the shared table
  return BandlimitKernel{xi};
}

double psi_direct(double xi, double x) { return xi * psi_unit_direct(xi * x); }

complex convolve_at(const LineFunction& f, const BandlimitKernel& psi, double x,
                    const QuadratureSpec& spec) {
  // integrate over the support of f, clipped to the reach of psi
  const double lo = std::max(f.lo, x - psi.trunc_radius());
  const double hi = std::min(f.hi, x + psi.trunc_radius());
  if (!(lo < hi)) return {0.0, 0.0};
  auto integrand = [&](double v) { return f.f(v) * psi.psi(x - v); };
  const double hint = std::max(f.osc_rate, psi.xi);
  auto res = integrate_1d(integrand, lo, hi,
                          hint > 0 ? std::optional<double>(hint) : std::nullopt,
                          spec);
  if (!res.converged)
    throw std::runtime_error("convolve_at: quadrature did not converge");
  return res.value;
}

LineFunction convolve_line(const LineFunction& f, const BandlimitKernel& psi,
                           const QuadratureSpec& spec) {
  LineFunction g;
  const BandlimitKernel kernel = psi;
  const LineFunction base = f;
  const QuadratureSpec sp = spec;
  g.f = [base, kernel, sp](double x) { return convolve_at(base, kernel, x, sp); };
  g.lo = f.lo - psi.trunc_radius();
  g.hi = f.hi + psi.trunc_radius();
  g.osc_rate = f.osc_rate;
  return g;
}

RateSweep verify_approx_rate(const LineFunction& f, int k,
                             const std::vector<double>& xi_list,
                             const QuadratureSpec& spec) {
  if (xi_list.size() < 2)
    throw std::invalid_argument("verify_approx_rate: need >= 2 bandwidths");
  RateSweep sweep;
  sweep.xi = xi_list;
  sweep.err.resize(xi_list.size());

  // sup grid over the declared support with a margin
  const double margin = 0.25 * (f.hi - f.lo);
  const double a = f.lo - margin, b = f.hi + margin;
  const int npts = 481;
  double fmax = 0.0;
  for (int i = 0; i < npts; ++i)
    fmax = std::max(fmax, std::abs(f.f(a + (b - a) * i / (npts - 1.0))));

  parallel_for(static_cast<int>(xi_list.size()), [&](int xi_idx) {
    const BandlimitKernel psi = build_bandlimit_kernel(xi_list[xi_idx]);
    double e = 0.0;
    for (int i = 0; i < npts; ++i) {
      const double x = a + (b - a) * i / (npts - 1.0);
      e = std::max(e, std::abs(f.f(x) - convolve_at(f, psi, x, spec)));
    }
    sweep.err[xi_idx] = e;
  });

  double floor = 1e-12 * std::max(fmax, 1e-300);
  bool all_floor = true;
  for (double e : sweep.err) all_floor = all_floor && e <= floor;
  if (all_floor) {
    sweep.degenerate = true;
    sweep.passed = true;
    return sweep;
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(xi_list.size());
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(xi_list[i]);
    const double ly = std::log(std::max(sweep.err[i], 1e-300));
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  sweep.fit.slope = (n * sxy - sx * sy) / denom;
  sweep.fit.intercept = (sy - sweep.fit.slope * sx) / n;
  sweep.fit.npoints = n;
  for (int i = 0; i < n; ++i) {
    const double pred = sweep.fit.intercept + sweep.fit.slope * std::log(xi_list[i]);
    sweep.fit.max_abs_residual = std::max(
        sweep.fit.max_abs_residual,
        std::abs(std::log(std::max(sweep.err[i], 1e-300)) - pred));
  }
  sweep.passed = sweep.fit.slope <= -double(k) + 0.3;
  return sweep;
}

std::pair<double, double> symbol_split_bounds(const SpaceModel& m,
                                              const DyadicSymbol& sym, int q,
                                              int k, double delta,
                                              const QuadratureSpec& spec) {
  if (q < -sym.j || q > 0)
    throw std::invalid_argument("symbol_split_bounds: q must lie in [-j, 0]");
  if (!(delta > 0.0 && delta < 0.125))
    throw std::invalid_argument("symbol_split_bounds: delta must lie in (0,1/8)");
  (void)k;  // enters only through the certificate algebra applied by callers

  const double xi = delta * std::exp2(0.5 * (q + sym.j));
  const BandlimitKernel psi = build_bandlimit_kernel(xi);
  const double t = std::exp2(-double(sym.j));

  const double a = sym.params.alpha;
  const double rate =
      std::max(0.5 * a * std::pow(sym.s_lo(), 0.5 * a - 1.0) *
                   std::exp2(double(sym.j)) / sym.u_lo(),
               30.0);
  LineFunction h{[&sym](double u) {
                   return u > 0.0 && u <= 1.0 ? eval_hj(sym, u) : complex{0.0, 0.0};
                 },
                 sym.u_lo(), sym.u_hi(), rate};

  // sup |h - h*psi| over the support widened by the mollifier scale
  const double margin = std::min(1.0, 40.0 / xi);
  const double glo = std::max(sym.u_lo() - margin, 1e-9);
  const double ghi = std::min(sym.u_hi() + margin, 1.0);
  const double step = std::min({0.15 / rate, 0.4 / xi, (ghi - glo) / 400.0});
  double sup_diff = 0.0;
  const int npts = static_cast<int>((ghi - glo) / step) + 1;
  std::vector<double> diffs(npts, 0.0);
  parallel_for(npts, [&](int i) {
    const double u = glo + i * step;
    diffs[i] = std::abs(h.f(u) - convolve_at(h, psi, u, spec));
  });
  for (double dv : diffs) sup_diff = std::max(sup_diff, dv);
  const double i1 = sup_diff * heat_l2_norm(m, t);

  // smoothed part of the kernel through the spectral calculus:
  // multiplier (h*psi)(e^{-t s}) e^{-t s}, tabulated on a log-u grid
  const double w_lo = t * m.rho_norm_sq;
  const double w_hi = 42.0;
  const double dw = std::min(0.15 / xi, 0.02);
  std::vector<double> wgrid;
  for (double w = w_lo; w <= w_hi; w += dw) wgrid.push_back(w);
  std::vector<complex> conv(wgrid.size());
  parallel_for(static_cast<int>(wgrid.size()), [&](int i) {
    conv[i] = convolve_at(h, psi, std::exp(-wgrid[i]), spec);
  });
  Interp1D smoothed(wgrid, conv);

  const double lam_max = 6.5 / std::sqrt(t);
  const double r_in = std::exp2(0.5 * q);
  auto kernel_at = [&](const RadialPoint& x) {
    auto g = [&](const SpectralPoint& p) {
      const double s = p.norm() * p.norm() + m.rho_norm_sq;
      const double w = t * s;
      const complex hs = w <= w_hi ? smoothed(w) : complex{0.0, 0.0};
      return hs * std::exp(-w) * spherical_function(m, p, x);
    };
    auto res = integrate_spectral(m, g, lam_max, spec, x.norm());
    if (!res.converged)
      throw std::runtime_error("symbol_split_bounds: spectral quadrature failed");
    return std::abs(res.value);
  };

  double i2 = 0.0;
  if (m.d == 1) {
    i2 = kernel_at(RadialPoint::of(r_in));
  } else {
    for (int i = 0; i <= 2; ++i) {
      const double th = 0.25 * pi * i;
      i2 = std::max(i2, kernel_at(RadialPoint::of(r_in * std::cos(th),
                                                  r_in * std::sin(th))));
    }
  }
  return {i1, i2};
}

}  // namespace osk
