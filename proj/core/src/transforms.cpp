#include "osk/transforms.hpp"

#include <cmath>

namespace osk {

namespace {

// one rank-1 factor of the volume-weighted spherical function:
//   phi_lambda(r) * 4 pi sinh^2 r = 4 pi sinc(lambda r) r sinh r
inline complex weighted_factor(double lambda, double r) {
  return 4.0 * pi * sinc_c(complex{lambda, 0.0} * r) * r * std::sinh(r);
}

}  // namespace

complex forward_at(const SpaceModel& m, const RadialProfile& f,
                   const SpectralPoint& p, const QuadratureSpec& spec) {
  if (p.dim != m.d)
    throw std::invalid_argument("forward_at: spectral point rank mismatch");
  if (m.d == 1) {
    const double lam = p.lambda[0];
    auto integrand = [&](double r) { return f.eval1(r) * weighted_factor(lam, r); };
    auto res = integrate_1d(integrand, 0.0, f.extent(),
                            std::abs(lam) > 0 ? std::optional<double>(std::abs(lam))
                                              : std::nullopt,
                            spec);
    if (!res.converged)
      throw std::runtime_error("forward_at: quadrature did not converge at lambda=" +
                               std::to_string(lam));
    return res.value;
  }
  const double l1 = p.lambda[0], l2 = p.lambda[1];
  const double ext1 = f.kind == RadialProfile::Kind::Tensor2D ? f.axis1.back()
                                                              : f.extent();
  const double ext2 = f.kind == RadialProfile::Kind::Tensor2D ? f.axis2.back()
                                                              : f.extent();
  auto integrand = [&](double r1, double r2) {
    return f.eval(RadialPoint::of(r1, r2)) * weighted_factor(l1, r1) *
           weighted_factor(l2, r2);
  };
  auto res = integrate_tensor(
      integrand, 0.0, ext1, [](double) { return 0.0; },
      [&](double) { return ext2; },
      std::abs(l1) > 0 ? std::optional<double>(std::abs(l1)) : std::nullopt,
      [&](double) {
        return std::abs(l2) > 0 ? std::optional<double>(std::abs(l2))
                                : std::nullopt;
      },
      spec);
  if (!res.converged)
    throw std::runtime_error("forward_at: tensor quadrature did not converge");
  return res.value;
}

SpectralProfile forward(const SpaceModel& m, const RadialProfile& f,
                        const std::vector<double>& lambda_grid,
                        const QuadratureSpec& spec) {
  if (m.d != 1) throw std::invalid_argument("forward: rank-1 overload");
  std::vector<complex> v(lambda_grid.size());
  parallel_for(static_cast<int>(lambda_grid.size()), [&](int i) {
    v[i] = forward_at(m, f, SpectralPoint::of(lambda_grid[i]), spec);
  });
  return SpectralProfile::radial_samples(1, lambda_grid, std::move(v),
                                         lambda_grid.back());
}

SpectralProfile forward(const SpaceModel& m, const RadialProfile& f,
                        const std::vector<double>& lambda1,
                        const std::vector<double>& lambda2,
                        const QuadratureSpec& spec) {
  if (m.d != 2) throw std::invalid_argument("forward: rank-2 overload");
  const int n1 = static_cast<int>(lambda1.size());
  const int n2 = static_cast<int>(lambda2.size());
  std::vector<complex> v(static_cast<size_t>(n1) * n2);
  parallel_for(n1 * n2, [&](int idx) {
    const int i = idx / n2, j = idx % n2;
    v[idx] = forward_at(m, f, SpectralPoint::of(lambda1[i], lambda2[j], 0.0), spec);
  });
  const double sr = std::hypot(lambda1.back(), lambda2.back());
  return SpectralProfile::tensor2d(lambda1, lambda2, std::move(v), sr);
}

double j2_over_x2(double x) {
  x = std::abs(x);
  if (x < 0.1) {
    const double x2 = x * x;
    return (1.0 - x2 / 12.0 + x2 * x2 / 384.0 - x2 * x2 * x2 / 23040.0) / 8.0;
  }
  return std::cyl_bessel_j(2, x) / (x * x);
}

namespace {

// rank-1 inversion at radius r:
//   kappa(r) = (r/sinh r)/(2 pi^2) * int F(l) sinc(l r) l^2 dl
complex inverse_r1(const SpaceModel& /*m*/, const RadialSymbol& sym, double r,
                   const QuadratureSpec& spec) {
  auto integrand = [&](double l) {
    return sym.F(l) * sinc_c(complex{l * r, 0.0}) * l * l;
  };
  auto res = integrate_1d(integrand, 0.0, sym.support_radius,
                          r > 0 ? std::optional<double>(r) : std::nullopt, spec);
  if (!res.converged)
    throw std::runtime_error("inverse: quadrature did not converge at r=" +
                             std::to_string(r));
  return res.value * r_over_sinh(r) / (2.0 * pi * pi);
}

// rank-2 radial factor at R = ||H||:
//   V(R) = (8 pi^3)^{-1} * int F(u) u^5 [J_2(uR)/(uR)^2] du,
// so that kappa(r1, r2) = (r1/sinh r1)(r2/sinh r2) V(R).
complex radial_factor_r2(const RadialSymbol& sym, double R,
                         const QuadratureSpec& spec) {
  auto integrand = [&](double u) {
    return sym.F(u) * u * u * u * u * u * j2_over_x2(u * R);
  };
  auto res = integrate_1d(integrand, 0.0, sym.support_radius,
                          R > 0 ? std::optional<double>(R) : std::nullopt, spec);
  if (!res.converged)
    throw std::runtime_error("inverse: radial-factor quadrature did not converge");
  return res.value / (8.0 * pi * pi * pi);
}

}  // namespace

complex inverse_radial_at(const SpaceModel& m, const RadialSymbol& sym,
                          const RadialPoint& x, const QuadratureSpec& spec) {
  if (x.dim != m.d)
    throw std::invalid_argument("inverse_radial_at: point rank mismatch");
  if (m.d == 1) return inverse_r1(m, sym, x.r[0], spec);
  return r_over_sinh(x.r[0]) * r_over_sinh(x.r[1]) *
         radial_factor_r2(sym, x.norm(), spec);
}

RadialProfile inverse_radial(const SpaceModel& m, const RadialSymbol& sym,
                             const std::vector<double>& grid,
                             const QuadratureSpec& spec) {
  std::vector<complex> v(grid.size());
  if (m.d == 1) {
    parallel_for(static_cast<int>(grid.size()), [&](int i) {
      v[i] = inverse_r1(m, sym, grid[i], spec);
    });
    return RadialProfile::grid1d(grid, std::move(v));
  }
  parallel_for(static_cast<int>(grid.size()), [&](int i) {
    v[i] = radial_factor_r2(sym, grid[i], spec);
  });
  return RadialProfile::weighted_radial(grid, std::move(v));
}

RadialProfile inverse(const SpaceModel& m, const SpectralProfile& sym,
                      const std::vector<double>& r_grid,
                      const QuadratureSpec& spec) {
  if (!sym.radial)
    throw std::invalid_argument("inverse: non-radial symbol needs a tensor grid");
  RadialSymbol rs{[&sym](double u) { return sym.eval_radial(u); },
                  sym.support_radius};
  return inverse_radial(m, rs, r_grid, spec);
}

RadialProfile inverse(const SpaceModel& m, const SpectralProfile& sym,
                      const std::vector<double>& r1,
                      const std::vector<double>& r2,
                      const QuadratureSpec& spec) {
  if (m.d != 2) throw std::invalid_argument("inverse: rank-2 overload");
  const int n1 = static_cast<int>(r1.size());
  const int n2 = static_cast<int>(r2.size());
  std::vector<complex> v(static_cast<size_t>(n1) * n2);
  const double sr = sym.support_radius;
  parallel_for(n1 * n2, [&](int idx) {
    const int i = idx / n2, j = idx % n2;
    const double a = r1[i], b = r2[j];
    auto integrand = [&](double l1, double l2) {
      return sym.eval(SpectralPoint::of(l1, l2, 0.0)) *
             sinc_c(complex{l1 * a, 0.0}) * sinc_c(complex{l2 * b, 0.0}) * l1 *
             l1 * l2 * l2;
    };
    auto res = integrate_tensor(
        integrand, 0.0, sr, [](double) { return 0.0; },
        [&](double) { return sr; },
        a > 0 ? std::optional<double>(a) : std::nullopt,
        [&](double) { return b > 0 ? std::optional<double>(b) : std::nullopt; },
        spec);
    if (!res.converged)
      throw std::runtime_error("inverse: tensor quadrature did not converge");
    v[idx] = res.value * r_over_sinh(a) * r_over_sinh(b) /
             std::pow(2.0 * pi * pi, 2);
  });
  return RadialProfile::tensor2d(r1, r2, std::move(v));
}

complex inverse_s_axis_at(const SpaceModel& m,
                          const std::function<complex(double)>& g_of_s,
                          double s_lo, double s_hi, const RadialPoint& x,
                          const QuadratureSpec& spec) {
  if (x.dim != m.d)
    throw std::invalid_argument("inverse_s_axis_at: point rank mismatch");
  s_lo = std::max(s_lo, m.rho_norm_sq);
  if (!(s_hi > s_lo)) return {0.0, 0.0};
  const double lam_lo_sq = std::max(s_lo - m.rho_norm_sq, 0.0);

  if (m.d == 1) {
    const double r = x.r[0];
    // lambda dlambda = ds/2:
    //   kappa(r) = (r/sinh r)/(4 pi^2) int g(s) sqrt(s-rho^2) sinc(r sqrt(s-rho^2)) ds
    auto integrand = [&](double s) {
      const double lam = std::sqrt(std::max(s - m.rho_norm_sq, 0.0));
      return g_of_s(s) * lam * sinc_c(complex{lam * r, 0.0});
    };
    const double max_rate =
        lam_lo_sq > 0 ? r / (2.0 * std::sqrt(lam_lo_sq)) : r;  // d(phase)/ds
    auto res = integrate_1d(integrand, s_lo, s_hi,
                            max_rate > 0 ? std::optional<double>(max_rate)
                                         : std::nullopt,
                            spec);
    if (!res.converged)
      throw std::runtime_error("inverse_s_axis_at: quadrature did not converge");
    return res.value * r_over_sinh(r) / (4.0 * pi * pi);
  }

  // rank 2: u^5 du = (s-rho^2)^2 ds / 2 in the polar reduction
  const double R = x.norm();
  auto integrand = [&](double s) {
    const double u2 = std::max(s - m.rho_norm_sq, 0.0);
    return g_of_s(s) * u2 * u2 * j2_over_x2(std::sqrt(u2) * R);
  };
  const double max_rate = lam_lo_sq > 0 ? R / (2.0 * std::sqrt(lam_lo_sq)) : R;
  auto res = integrate_1d(integrand, s_lo, s_hi,
                          max_rate > 0 ? std::optional<double>(max_rate)
                                       : std::nullopt,
                          spec);
  if (!res.converged)
    throw std::runtime_error("inverse_s_axis_at: quadrature did not converge");
  return res.value * r_over_sinh(x.r[0]) * r_over_sinh(x.r[1]) /
         (16.0 * pi * pi * pi);
}

double symbol_l2_sq(const SpaceModel& m, const RadialSymbol& sym,
                    const QuadratureSpec& spec) {
  if (m.d == 1) {
    auto integrand = [&](double l) {
      const double a = std::abs(sym.F(l));
      return complex{a * a * l * l, 0.0};
    };
    auto res = integrate_1d(integrand, 0.0, sym.support_radius, std::nullopt, spec);
    return res.value.real() / (2.0 * pi * pi);
  }
  auto integrand = [&](double u) {
    const double a = std::abs(sym.F(u));
    return complex{a * a * u * u * u * u * u, 0.0};
  };
  auto res = integrate_1d(integrand, 0.0, sym.support_radius, std::nullopt, spec);
  return res.value.real() / (64.0 * pi * pi * pi);
}

}  // namespace osk
