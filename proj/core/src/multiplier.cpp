#include "osk/multiplier.hpp"

#include <algorithm>
#include <cmath>

namespace osk {

complex m_scalar(const MultiplierParams& params, complex s) {
  // principal branches; s stays in the right half-plane for tube_v < 1
  const complex ls = std::log(s);
  return std::exp(-0.5 * params.beta * ls) *
         std::exp(complex{0.0, 1.0} * std::exp(0.5 * params.alpha * ls));
}

complex eval_m(const MultiplierParams& params, const SpaceModel& m,
               const SpectralPoint& p) {
  params.validate();
  if (p.dim != m.d) throw std::invalid_argument("eval_m: point rank mismatch");
  if (p.tube_v >= 1.0)
    throw std::domain_error("eval_m: tube_v >= 1 hits the pole line");
  complex s{m.rho_norm_sq, 0.0};
  for (int i = 0; i < m.d; ++i) {
    const complex z{p.lambda[i], p.tube_v * m.rho[i]};
    s += z * z;
  }
  return m_scalar(params, s);
}

complex eval_m_tilde(const DyadicSymbol& sym, double s) {
  if (s <= sym.model.rho_norm_sq) return {0.0, 0.0};
  const double lam = std::sqrt(s - sym.model.rho_norm_sq);
  const double om = sym.partition.omega(lam * std::exp2(-0.5 * sym.j));
  if (om == 0.0) return {0.0, 0.0};
  return m_scalar(sym.params, complex{s, 0.0}) * om;
}

complex eval_mj(const DyadicSymbol& sym, const SpectralPoint& p) {
  if (p.tube_v != 0.0)
    throw std::domain_error("eval_mj: real spectrum only (tube_v = 0)");
  if (p.dim != sym.model.d)
    throw std::invalid_argument("eval_mj: point rank mismatch");
  const double t = p.norm() * std::exp2(-0.5 * sym.j);
  const double om = sym.partition.omega(t);
  if (om == 0.0) return {0.0, 0.0};
  const double s = p.norm() * p.norm() + sym.model.rho_norm_sq;
  return m_scalar(sym.params, complex{s, 0.0}) * om;
}

complex eval_hj(const DyadicSymbol& sym, double u) {
  if (!(u > 0.0) || u > 1.0)
    throw std::domain_error("eval_hj: u must lie in (0, 1]");
  const double s = -std::ldexp(std::log(u), sym.j);
  const complex mt = eval_m_tilde(sym, s);
  if (mt == complex{0.0, 0.0}) return {0.0, 0.0};
  return mt / u;
}

double sup_abs_mj(const DyadicSymbol& sym) {
  const double lo = sym.lambda_lo(), hi = sym.lambda_hi();
  const int n = 4096;
  double sup = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double lam = lo + (hi - lo) * static_cast<double>(i) / n;
    sup = std::max(sup,
                   std::abs(eval_mj(sym, SpectralPoint::of(lam))));
  }
  return sup;
}

namespace {

// Fornberg weights for the k-th derivative on the given stencil offsets
// (times h) around 0. offsets must be distinct.
std::vector<double> fornberg_weights(int k, const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  // c[j][m]: weight of node j for derivative order m
  std::vector<std::vector<double>> c(n, std::vector<double>(k + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0];
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, k);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i];
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int m = mn; m >= 1; --m)
          c[i][m] = c1 * (m * c[i - 1][m - 1] - c5 * c[i - 1][m]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int m = mn; m >= 1; --m)
        c[j][m] = (c4 * c[j][m] - m * c[j][m - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = c[j][k];
  return w;
}

// sup norm of the i-th derivative from uniformly sampled values, using a
// 9-point stencil of spacing `stride * h`.
double fd_sup(const std::vector<complex>& vals, double h, int stride, int k,
              const std::vector<double>& weights) {
  const int n = static_cast<int>(vals.size());
  const double hk = std::pow(stride * h, k);
  double sup = 0.0;
  for (int i = 4 * stride; i < n - 4 * stride; ++i) {
    complex acc{0.0, 0.0};
    for (int s = -4; s <= 4; ++s) acc += weights[s + 4] * vals[i + s * stride];
    sup = std::max(sup, std::abs(acc) / hk);
  }
  return sup;
}

}  // namespace

double hj_ck_norm(const DyadicSymbol& sym, int k) {
  if (k < 0 || k > 6)
    throw std::invalid_argument("hj_ck_norm: k must lie in [0, 6]");
  const double ulo = sym.u_lo(), uhi = sym.u_hi();
  const double span = uhi - ulo;

  // oscillation rate of the phase s^{alpha/2} in u, at the inner edge
  const double a = sym.params.alpha;
  const double rate_phase = 0.5 * a * std::pow(sym.s_lo(), 0.5 * a - 1.0) *
                            std::exp2(double(sym.j)) / ulo;
  const double rate = std::max({rate_phase, 30.0});
  double h = 0.15 / rate;
  h = std::min(h, span / 400.0);

  const double lo = std::max(ulo - 9.0 * h, 1e-12);
  const double hi = std::min(uhi + 9.0 * h, 1.0);
  const int n = static_cast<int>(std::ceil((hi - lo) / h)) + 1;
  std::vector<complex> vals(n);
  for (int i = 0; i < n; ++i) vals[i] = eval_hj(sym, lo + h * i);

  double norm = 0.0, sup0 = 0.0;
  for (const auto& v : vals) sup0 = std::max(sup0, std::abs(v));
  norm = sup0;
  double err_est = 0.0;

  std::vector<double> offs(9);
  for (int i = 0; i < 9; ++i) offs[i] = i - 4;
  for (int order = 1; order <= k; ++order) {
    const auto w = fornberg_weights(order, offs);
    const double d1 = fd_sup(vals, h, 1, order, w);
    const double d2 = fd_sup(vals, h, 2, order, w);
    norm += d1;
    err_est += std::abs(d1 - d2);
  }
  if (k >= 1 && err_est > 0.01 * norm)
    throw std::runtime_error("hj_ck_norm: finite-difference error estimate above 1%");
  return norm;
}

namespace {

// analytic derivatives of m along a coordinate ray t -> m(t e_1 + i v rho)
struct TubeEval {
  MultiplierParams params;
  const SpaceModel* model;
  double v;

  complex s_of(double t) const {
    complex s{model->rho_norm_sq, 0.0};
    complex z{t, v * model->rho[0]};
    s += z * z;
    for (int i = 1; i < model->d; ++i) {
      complex zi{0.0, v * model->rho[i]};
      s += zi * zi;
    }
    return s;
  }
  complex m_of(double t) const { return m_scalar(params, s_of(t)); }

  complex deriv(double t, int k) const {
    const complex s = s_of(t);
    const complex f = m_scalar(params, s);
    const complex g = -0.5 * params.beta / s +
                      complex{0.0, 0.5 * params.alpha} *
                          std::pow(s, 0.5 * params.alpha - 1.0);
    const complex sp = 2.0 * complex{t, v * model->rho[0]};
    if (k == 0) return f;
    if (k == 1) return f * g * sp;
    const complex gp = 0.5 * params.beta / (s * s) +
                       complex{0.0, 0.5 * params.alpha} *
                           (0.5 * params.alpha - 1.0) *
                           std::pow(s, 0.5 * params.alpha - 2.0);
    // d2/dt2 m = f (g^2 + g') s'^2 + f g s''
    return f * ((g * g + gp) * sp * sp + g * 2.0);
  }
};

complex richardson_fd(const std::function<complex(double)>& f, double t, int k,
                      double h0) {
  // central stencils of order 2, Richardson in h^2
  auto base = [&](double h) -> complex {
    if (k == 3)
      return (-0.5 * f(t - 2 * h) + f(t - h) - f(t + h) + 0.5 * f(t + 2 * h)) /
             (h * h * h);
    // k == 4
    return (f(t - 2 * h) - 4.0 * f(t - h) + 6.0 * f(t) - 4.0 * f(t + h) +
            f(t + 2 * h)) /
           (h * h * h * h);
  };
  constexpr int levels = 5;
  complex tab[levels][levels];
  for (int i = 0; i < levels; ++i) {
    tab[i][0] = base(h0 / std::exp2(double(i)));
    double fac = 4.0;
    for (int m = 1; m <= i; ++m) {
      tab[i][m] = (fac * tab[i][m - 1] - tab[i - 1][m - 1]) / (fac - 1.0);
      fac *= 4.0;
    }
  }
  // pick the diagonal entry with the smallest successive change
  double best = std::abs(tab[1][1] - tab[0][0]);
  int best_i = 1;
  bool decreased = false;
  for (int i = 2; i < levels; ++i) {
    const double diff = std::abs(tab[i][i] - tab[i - 1][i - 1]);
    if (diff < best) {
      best = diff;
      best_i = i;
      decreased = true;
    }
  }
  const double scale = std::abs(tab[best_i][best_i]);
  if (!decreased && best > 0.05 * std::max(scale, 1e-300))
    throw std::runtime_error("tube derivative: non-monotone Richardson tail");
  return tab[best_i][best_i];
}

}  // namespace

std::vector<std::pair<double, double>> tube_derivative_profile(
    const MultiplierParams& params, const SpaceModel& m,
    const SymbolClassParams& cls, int k,
    const std::vector<double>& lambda_grid) {
  params.validate();
  if (k < 0 || k > 4)
    throw std::invalid_argument("tube_derivative_profile: k must lie in [0, 4]");
  if (!(cls.v >= 0.0 && cls.v < 1.0))
    throw std::invalid_argument("tube_derivative_profile: v must lie in [0, 1)");
  TubeEval te{params, &m, cls.v};
  std::vector<std::pair<double, double>> out;
  out.reserve(lambda_grid.size());
  for (double lam : lambda_grid) {
    double val;
    if (k <= 2) {
      val = std::abs(te.deriv(lam, k));
    } else {
      const double h0 = 0.1 * std::max(std::pow(std::max(lam, 1.0), 1.0 - params.alpha) /
                                           params.alpha,
                                       0.5);
      val = std::abs(richardson_fd([&](double t) { return te.m_of(t); }, lam, k,
                                   std::min(h0, 0.25 * std::max(lam, 1.0))));
    }
    out.emplace_back(lam, val);
  }
  return out;
}

ExponentContext exponent_context(const SpaceModel& m, double p,
                                 const GammaProfile* profile) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::domain_error("exponent_context: p must lie in (1, infinity)");
  ExponentContext cx;
  cx.p = p;
  cx.p_prime = p / (p - 1.0);
  cx.rho_p_coeff = std::abs(2.0 / p - 1.0);
  const double eta = profile ? profile->eta_norm : 0.0;
  cx.v_gamma = 2.0 * std::min(1.0 / p, 1.0 / cx.p_prime) * eta / m.rho_norm +
               cx.rho_p_coeff;
  return cx;
}

double partition_unity_defect(int J, double t) {
  PartitionSpec part;
  double acc = part.chi(sqrt2 * t);
  for (int j = 0; j <= J; ++j) acc += part.omega(std::exp2(-0.5 * j) * t);
  return acc - 1.0;
}

RadialSymbol residual_symbol(const MultiplierParams& params, const SpaceModel& m) {
  params.validate();
  const double rho2 = m.rho_norm_sq;
  return RadialSymbol{
      [params, rho2](double lam) -> complex {
        const double c = chi_cutoff(sqrt2 * lam);
        if (c == 0.0) return {0.0, 0.0};
        return m_scalar(params, complex{lam * lam + rho2, 0.0}) * c;
      },
      1.0};
}

RadialSymbol dyadic_symbol_radial(const DyadicSymbol& sym) {
  DyadicSymbol s = sym;
  return RadialSymbol{
      [s](double lam) -> complex {
        const double om = s.partition.omega(lam * std::exp2(-0.5 * s.j));
        if (om == 0.0) return {0.0, 0.0};
        return m_scalar(s.params, complex{lam * lam + s.model.rho_norm_sq, 0.0}) *
               om;
      },
      sym.lambda_hi()};
}

}  // namespace osk
