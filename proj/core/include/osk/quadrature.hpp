#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "osk/common.hpp"
#include "osk/space_model.hpp"

namespace osk {

/// Tolerances and budgets for the adaptive engine. Frequency-hinted runs
/// start from panels no wider than (2 pi / hint) / osc_panels_per_period.
struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_panels = 20000;
  int osc_panels_per_period = 6;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
      throw std::invalid_argument("QuadratureSpec: tolerances must be > 0");
    if (max_panels < 64)
      throw std::invalid_argument("QuadratureSpec: max_panels must be >= 64");
    if (osc_panels_per_period < 4)
      throw std::invalid_argument(
          "QuadratureSpec: osc_panels_per_period must be >= 4");
  }

  QuadratureSpec tightened(double factor) const {
    QuadratureSpec s = *this;
    s.rel_tol *= factor;
    s.abs_tol *= factor;
    return s;
  }
};

struct IntegralResult {
  complex value{0.0, 0.0};
  double err_estimate = 0.0;
  int panels_used = 0;
  bool converged = false;

  double real() const { return value.real(); }
};

namespace detail {

// Gauss(7)/Kronrod(15) pair on [-1,1]; the Gauss nodes are the odd-index
// Kronrod abscissae plus the center.
inline constexpr double kKronX[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kKronW[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  complex val;
  double err;
};

template <class F>
Panel eval_panel(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const complex fc = f(c);
  complex kron = kKronW[7] * fc;
  complex gauss = kGaussW[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const complex fp = f(c + h * kKronX[i]);
    const complex fm = f(c - h * kKronX[i]);
    kron += kKronW[i] * (fp + fm);
    if (i % 2 == 1) gauss += kGaussW[i / 2] * (fp + fm);
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.val = h * kron;
  p.err = std::abs(h * (kron - gauss));
  return p;
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of a complex-valued f over [a, b].
/// Bisection on the largest-error panel (first on ties); the final value is a
/// compensated sum over panels sorted by left endpoint, so the result does not
/// depend on the refinement history beyond the panel set itself.
template <class F>
IntegralResult integrate_1d(F&& f, double a, double b,
                            std::optional<double> freq_hint,
                            const QuadratureSpec& spec) {
  spec.validate();
  if (a == b) return {complex{0.0, 0.0}, 0.0, 0, true};
  if (a > b) throw std::invalid_argument("integrate_1d: requires a < b");

  int n0 = 1;
  if (freq_hint && *freq_hint > 0.0) {
    const double wmax = (two_pi / *freq_hint) / spec.osc_panels_per_period;
    const double want = std::ceil((b - a) / wmax);
    n0 = static_cast<int>(
        std::min(want, static_cast<double>(spec.max_panels)));
    n0 = std::max(n0, 1);
  }

  std::vector<detail::Panel> panels;
  panels.reserve(static_cast<size_t>(n0) + 64);
  for (int i = 0; i < n0; ++i) {
    const double pa = a + (b - a) * static_cast<double>(i) / n0;
    const double pb = (i + 1 == n0) ? b : a + (b - a) * static_cast<double>(i + 1) / n0;
    panels.push_back(detail::eval_panel(f, pa, pb));
  }

  complex tot_val{0.0, 0.0};
  double tot_err = 0.0;
  for (const auto& p : panels) {
    tot_val += p.val;
    tot_err += p.err;
  }

  auto within_tol = [&](double err, complex val) {
    return err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(val));
  };

  while (!within_tol(tot_err, tot_val) &&
         static_cast<int>(panels.size()) < spec.max_panels) {
    size_t worst = 0;
    for (size_t i = 1; i < panels.size(); ++i)
      if (panels[i].err > panels[worst].err) worst = i;
    const detail::Panel old = panels[worst];
    if (old.b - old.a < 1e-14 * (b - a)) break;  // refinement floor
    const double mid = 0.5 * (old.a + old.b);
    const detail::Panel left = detail::eval_panel(f, old.a, mid);
    const detail::Panel right = detail::eval_panel(f, mid, old.b);
    tot_val += left.val + right.val - old.val;
    tot_err += left.err + right.err - old.err;
    panels[worst] = left;
    panels.push_back(right);
  }

  std::sort(panels.begin(), panels.end(),
            [](const detail::Panel& x, const detail::Panel& y) { return x.a < y.a; });
  KahanSum re, im, err;
  for (const auto& p : panels) {
    re.add(p.val.real());
    im.add(p.val.imag());
    err.add(p.err);
  }

  IntegralResult out;
  out.value = complex{re.sum, im.sum};
  out.err_estimate = err.sum;
  out.panels_used = static_cast<int>(panels.size());
  out.converged = within_tol(out.err_estimate, out.value);
  return out;
}

/// Iterated 2-D integration: outer over x in [ax, bx], inner over
/// y in [ylo(x), yhi(x)]. Inner runs at tightened tolerance; non-convergence
/// anywhere clears the converged flag.
template <class F, class Lo, class Hi, class HintY>
IntegralResult integrate_tensor(F&& f, double ax, double bx, Lo&& ylo, Hi&& yhi,
                                std::optional<double> hint_x, HintY&& hint_y,
                                const QuadratureSpec& spec) {
  const QuadratureSpec inner = spec.tightened(0.1);
  bool inner_ok = true;
  double inner_err = 0.0;
  auto outer = [&](double x) -> complex {
    const double lo = ylo(x);
    const double hi = yhi(x);
    if (!(lo < hi)) return complex{0.0, 0.0};
    auto r = integrate_1d([&](double y) { return f(x, y); }, lo, hi, hint_y(x),
                          inner);
    if (!r.converged) inner_ok = false;
    inner_err = std::max(inner_err, r.err_estimate);
    return r.value;
  };
  IntegralResult out = integrate_1d(outer, ax, bx, hint_x, spec);
  out.err_estimate += inner_err * (bx - ax);
  out.converged = out.converged && inner_ok;
  return out;
}

/// Outer truncation radius for unbounded radial regions.
inline constexpr double kRadialCutoff = 40.0;

/// integral over the region of g(H) * volume_density(H) dH.
/// g takes a RadialPoint; regions are ||H||-defined. For unbounded regions the
/// integral is truncated at r_cut and a geometric tail bound from the last two
/// unit slices is added to err_estimate; a non-decreasing tail clears
/// `converged`.
template <class G>
IntegralResult integrate_radial(const SpaceModel& m, G&& g, RegionSpec region,
                                const QuadratureSpec& spec,
                                std::optional<double> freq_hint = {},
                                double r_cut = kRadialCutoff) {
  const double lo = region.lo();
  const double hi = region.hi(r_cut);
  if (!(lo < hi)) return {complex{0.0, 0.0}, 0.0, 0, true};

  if (m.d == 1) {
    auto f = [&](double r) {
      const RadialPoint x = RadialPoint::of(r);
      return g(x) * volume_density(m, x);
    };
    IntegralResult out = integrate_1d(f, lo, hi, freq_hint, spec);
    if (region.unbounded() && hi == r_cut) {
      auto mag = [&](double r) {
        const RadialPoint x = RadialPoint::of(r);
        return complex{std::abs(g(x)) * volume_density(m, x), 0.0};
      };
      const QuadratureSpec loose{1e-6, 1e-16, spec.max_panels,
                                 spec.osc_panels_per_period};
      const double last =
          integrate_1d(mag, r_cut - 1.0, r_cut, freq_hint, loose).value.real();
      const double prev =
          integrate_1d(mag, r_cut - 2.0, r_cut - 1.0, freq_hint, loose).value.real();
      if (last > prev && last > spec.abs_tol) {
        out.converged = false;  // divergent-looking tail
      } else if (prev > 0.0 && last > 0.0) {
        const double ratio = last / prev;
        if (ratio < 1.0) out.err_estimate += last * ratio / (1.0 - ratio);
      }
    }
    return out;
  }

  // rank 2: iterated quadrature with ||H||-derived inner bounds
  const double a2 = lo * lo;
  const double b2 = hi * hi;
  auto ylo = [&](double x) {
    if (region.kind == RegionSpec::Kind::Annulus ||
        region.kind == RegionSpec::Kind::Tail) {
      const double s = a2 - x * x;
      return s > 0.0 ? std::sqrt(s) : 0.0;
    }
    return 0.0;
  };
  auto yhi = [&](double x) {
    if (region.kind == RegionSpec::Kind::Annulus ||
        region.kind == RegionSpec::Kind::Ball) {
      const double s = b2 - x * x;
      return s > 0.0 ? std::sqrt(s) : 0.0;
    }
    return hi;  // All/Tail: truncated box
  };
  auto f = [&](double x, double y) {
    const RadialPoint p = RadialPoint::of(x, y);
    return g(p) * volume_density(m, p);
  };
  const double outer_hi =
      (region.kind == RegionSpec::Kind::All || region.kind == RegionSpec::Kind::Tail)
          ? hi
          : hi;
  IntegralResult out =
      integrate_tensor(f, 0.0, outer_hi, ylo, yhi, freq_hint,
                       [&](double) { return freq_hint; }, spec);
  if (region.unbounded()) {
    // cheap boundary probe in place of a full tail sweep
    double edge = 0.0;
    for (int k = 0; k <= 8; ++k) {
      const double th = 0.5 * pi * k / 8.0;
      const RadialPoint p = RadialPoint::of((r_cut - 0.5) * std::cos(th),
                                            (r_cut - 0.5) * std::sin(th));
      edge = std::max(edge, std::abs(g(p)) * volume_density(m, p));
    }
    out.err_estimate += edge * r_cut;
    if (edge * r_cut > std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value)) &&
        edge > 0.0)
      out.converged = false;
  }
  return out;
}

/// integral over the positive spectral cone of g(lambda) * plancherel density.
/// g must vanish (or be declared negligible) outside ||lambda|| <= support_radius.
template <class G>
IntegralResult integrate_spectral(const SpaceModel& m, G&& g,
                                  double support_radius,
                                  const QuadratureSpec& spec,
                                  std::optional<double> freq_hint = {}) {
  if (!(support_radius > 0.0)) return {complex{0.0, 0.0}, 0.0, 0, true};
  if (m.d == 1) {
    auto f = [&](double l) {
      const SpectralPoint p = SpectralPoint::of(l);
      return g(p) * plancherel_density(m, p);
    };
    return integrate_1d(f, 0.0, support_radius, freq_hint, spec);
  }
  auto f = [&](double l1, double l2) {
    const SpectralPoint p = SpectralPoint::of(l1, l2, 0.0);
    return g(p) * plancherel_density(m, p);
  };
  return integrate_tensor(
      f, 0.0, support_radius, [](double) { return 0.0; },
      [&](double) { return support_radius; }, freq_hint,
      [&](double) { return freq_hint; }, spec);
}

}  // namespace osk
