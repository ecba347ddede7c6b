#include "osk/heat_semigroup.hpp"

#include <algorithm>
#include <cmath>

namespace osk {

complex oscillated_heat_series(const SpaceModel& m, int j, const SeriesSpec& spec,
                               const RadialPoint& x) {
  spec.validate();
  if (j < 0) throw std::invalid_argument("oscillated_heat_series: j must be >= 0");
  const double t = std::exp2(-double(j));
  const double at = std::abs(spec.tau);
  const complex itau{0.0, spec.tau};

  const double p_sup = heat_kernel_sup(m, x, t);
  complex sum{0.0, 0.0};
  complex coeff{1.0, 0.0};  // (i tau)^m / m!
  double coeff_abs = 1.0;
  const int m_floor = static_cast<int>(std::ceil(2.0 * std::exp(1.0) * at));
  for (int term = 0;; ++term) {
    sum += coeff * heat_kernel(m, (term + 1) * t, x);
    coeff *= itau / double(term + 1);
    coeff_abs *= at / double(term + 1);
    if (term + 1 >= m_floor && term >= 1) {
      // tail <= coeff_abs * p_sup / (1 - at/(term+2)), valid once at < term+2
      const double q = at / double(term + 2);
      if (q < 1.0) {
        const double tail = coeff_abs * p_sup / (1.0 - q);
        if (tail < spec.tol) break;
      }
    }
    if (term + 1 >= spec.m_max)
      throw std::runtime_error(
          "oscillated_heat_series: m_max reached before the tail bound met tol");
  }
  return sum;
}

namespace {

std::vector<RadialPoint> annulus_samples(const SpaceModel& m, int q) {
  // inner boundary of the dyadic annulus plus 8 interior radii
  const double r_in = std::exp2(0.5 * q);
  const double r_out = std::exp2(0.5 * (q + 1));
  std::vector<double> radii{r_in};
  for (int i = 1; i <= 8; ++i)
    radii.push_back(r_in + (r_out - r_in) * i / 9.0);
  std::vector<RadialPoint> pts;
  if (m.d == 1) {
    for (double r : radii) pts.push_back(RadialPoint::of(r));
  } else {
    for (double r : radii)
      for (int k = 0; k <= 2; ++k) {
        const double th = 0.25 * pi * k;
        pts.push_back(RadialPoint::of(r * std::cos(th), r * std::sin(th)));
      }
  }
  return pts;
}

}  // namespace

NormReport verify_pointwise_decay(const SpaceModel& m,
                                  const std::vector<int>& j_list,
                                  const std::vector<std::vector<int>>& q_lists,
                                  const SeriesSpec& spec) {
  spec.validate();
  if (q_lists.size() != j_list.size())
    throw std::invalid_argument("verify_pointwise_decay: one q list per j");
  NormReport rep;
  rep.quantity = "oscillated-series-decay";

  struct Cell { int j, q; double x; double S; };
  std::vector<Cell> cells;
  for (size_t ji = 0; ji < j_list.size(); ++ji) {
    const int j = j_list[ji];
    for (int q : q_lists[ji]) {
      if (q < -j)
        throw std::invalid_argument("verify_pointwise_decay: requires q >= -j");
      if (q > 2)
        throw std::invalid_argument("verify_pointwise_decay: desk scale needs q <= 2");
      cells.push_back({j, q, std::exp2(0.5 * (q + j)), 0.0});
    }
  }

  parallel_for(static_cast<int>(cells.size()), [&](int ci) {
    Cell& cell = cells[ci];
    const double tau_max = spec.delta * cell.x;
    const double taus[5] = {0.0, 0.5 * tau_max, -0.5 * tau_max, tau_max, -tau_max};
    const auto pts = annulus_samples(m, cell.q);
    double sup = 0.0;
    for (double tau : taus) {
      SeriesSpec s = spec;
      s.tau = tau;
      for (const auto& x : pts)
        sup = std::max(sup, std::abs(oscillated_heat_series(m, cell.j, s, x)));
    }
    cell.S = sup * std::exp2(-0.5 * m.n * cell.j);
  });

  // fit -log S = a + c * 2^{(q+j)/2}
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(cells.size());
  for (const auto& c : cells) {
    const double y = -std::log(c.S);
    sx += c.x; sy += y; sxx += c.x * c.x; sxy += c.x * y;
  }
  const double denom = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;

  double max_rel_resid = 0.0;
  for (const auto& c : cells) {
    const double y = -std::log(c.S);
    const double fit = intercept + slope * c.x;
    if (std::abs(fit) > 0)
      max_rel_resid = std::max(max_rel_resid, std::abs(y - fit) / std::abs(fit));
    rep.rows.push_back({double(c.j), double(c.q), spec.delta * c.x, c.S,
                        fit, false});
  }
  rep.fit.slope = slope;
  rep.fit.intercept = intercept;
  rep.fit.max_abs_residual = max_rel_resid;
  rep.fit.npoints = n;
  rep.target = 0.0;
  rep.tolerance = 0.2;
  rep.passed = slope > 0.0 && max_rel_resid < 0.2;
  rep.note = "fitted exponent coefficient " + std::to_string(slope);
  return rep;
}

NormReport verify_crude_bound(const SpaceModel& m,
                              const std::vector<double>& t_grid,
                              const std::vector<double>& r_grid) {
  NormReport rep;
  rep.quantity = "heat-crude-bound";
  const double bound = std::pow(4.0 * pi, -0.5 * m.n);
  double sup = 0.0;
  double sup_t = 0.0, sup_r = 0.0;
  for (double t : t_grid) {
    if (!(t > 0.0)) throw std::domain_error("verify_crude_bound: t must be > 0");
    for (double r : r_grid) {
      std::vector<RadialPoint> pts;
      if (m.d == 1) {
        pts.push_back(RadialPoint::of(r));
      } else {
        pts.push_back(RadialPoint::of(r / sqrt2, r / sqrt2));
        pts.push_back(RadialPoint::of(r, 0.0));
      }
      for (const auto& x : pts) {
        const double lg = heat_kernel_log(m, t, x) + 0.5 * m.n * std::log(t) +
                          x.norm() * x.norm() / (4.0 * t);
        const double ratio = std::exp(lg);
        if (ratio > sup) { sup = ratio; sup_t = t; sup_r = r; }
      }
    }
  }
  rep.rows.push_back({sup_t, sup_r, 0.0, sup, bound, false});
  rep.target = bound;
  rep.tolerance = 1e-12;
  rep.passed = sup <= bound * (1.0 + 1e-12);
  return rep;
}

double heat_l2_norm(const SpaceModel& m, double t) {
  if (!(t > 0.0)) throw std::domain_error("heat_l2_norm: t must be > 0");
  const RadialPoint origin = m.d == 1 ? RadialPoint::of(0.0)
                                      : RadialPoint::of(0.0, 0.0);
  return std::sqrt(heat_kernel(m, 2.0 * t, origin));
}

}  // namespace osk
