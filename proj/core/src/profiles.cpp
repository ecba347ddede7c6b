#include "osk/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace osk {

Interp1D::Interp1D(std::vector<double> x, std::vector<complex> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.size() < 4)
    throw std::invalid_argument("Interp1D: need >= 4 matching samples");
  for (size_t i = 1; i < x_.size(); ++i)
    if (!(x_[i] > x_[i - 1]))
      throw std::invalid_argument("Interp1D: grid must be strictly increasing");
  even_origin_ = std::abs(x_.front()) < 1e-12;
}

complex Interp1D::operator()(double x) const {
  const int n = static_cast<int>(x_.size());
  if (x > x_.back()) {
    return (x - x_.back() < 1e-9) ? y_.back() : complex{0.0, 0.0};
  }
  if (x < x_.front()) {
    if (even_origin_) x = -x;                       // even reflection
    if (x < x_.front()) return y_.front();          // clamp
    if (x > x_.back()) return complex{0.0, 0.0};
  }
  // interval index: x in [x_k, x_{k+1})
  int k = static_cast<int>(std::upper_bound(x_.begin(), x_.end(), x) -
                           x_.begin()) - 1;
  k = std::clamp(k, 0, n - 2);
  int i0 = k - 1;
  if (!even_origin_) i0 = std::clamp(i0, 0, n - 4);
  if (i0 + 3 > n - 1) i0 = n - 4;

  double xs[4];
  complex ys[4];
  for (int j = 0; j < 4; ++j) {
    xs[j] = node_x(i0 + j);
    ys[j] = node_y(i0 + j);
  }
  complex acc{0.0, 0.0};
  for (int j = 0; j < 4; ++j) {
    double w = 1.0;
    for (int l = 0; l < 4; ++l)
      if (l != j) w *= (x - xs[l]) / (xs[j] - xs[l]);
    acc += w * ys[j];
  }
  return acc;
}

RadialProfile RadialProfile::grid1d(std::vector<double> r,
                                    std::vector<complex> v) {
  RadialProfile p;
  p.kind = Kind::Grid1D;
  p.dim = 1;
  p.axis1 = std::move(r);
  p.values = std::move(v);
  p.finalize();
  return p;
}

RadialProfile RadialProfile::tensor2d(std::vector<double> r1,
                                      std::vector<double> r2,
                                      std::vector<complex> v) {
  RadialProfile p;
  p.kind = Kind::Tensor2D;
  p.dim = 2;
  p.axis1 = std::move(r1);
  p.axis2 = std::move(r2);
  p.values = std::move(v);
  if (p.values.size() != p.axis1.size() * p.axis2.size())
    throw std::invalid_argument("RadialProfile: tensor value count mismatch");
  return p;
}

RadialProfile RadialProfile::weighted_radial(std::vector<double> R,
                                             std::vector<complex> v) {
  RadialProfile p;
  p.kind = Kind::WeightedRadial2D;
  p.dim = 2;
  p.axis1 = std::move(R);
  p.values = std::move(v);
  p.finalize();
  return p;
}

RadialProfile RadialProfile::sample1d(const std::vector<double>& r,
                                      const std::function<complex(double)>& f) {
  std::vector<complex> v(r.size());
  for (size_t i = 0; i < r.size(); ++i) v[i] = f(r[i]);
  return grid1d(r, std::move(v));
}

RadialProfile RadialProfile::sample2d(
    const std::vector<double>& r1, const std::vector<double>& r2,
    const std::function<complex(double, double)>& f) {
  std::vector<complex> v(r1.size() * r2.size());
  for (size_t i = 0; i < r1.size(); ++i)
    for (size_t j = 0; j < r2.size(); ++j) v[i * r2.size() + j] = f(r1[i], r2[j]);
  return tensor2d(r1, r2, std::move(v));
}

void RadialProfile::finalize() {
  if (kind == Kind::Grid1D || kind == Kind::WeightedRadial2D) {
    if (values.size() != axis1.size())
      throw std::invalid_argument("RadialProfile: value count mismatch");
    interp1_ = Interp1D(axis1, values);
  }
}

namespace {

// 4-point Lagrange weights along one axis with even reflection at the origin.
struct Stencil {
  int idx[4];
  double w[4];
};

Stencil axis_stencil(const std::vector<double>& ax, double x) {
  const int n = static_cast<int>(ax.size());
  const bool even_origin = std::abs(ax.front()) < 1e-12;
  double xq = x;
  int k = static_cast<int>(std::upper_bound(ax.begin(), ax.end(), xq) -
                           ax.begin()) - 1;
  k = std::clamp(k, 0, n - 2);
  int i0 = k - 1;
  if (!even_origin) i0 = std::clamp(i0, 0, n - 4);
  if (i0 + 3 > n - 1) i0 = n - 4;
  Stencil s;
  double xs[4];
  for (int j = 0; j < 4; ++j) {
    const int i = i0 + j;
    s.idx[j] = i >= 0 ? i : -i;
    xs[j] = i >= 0 ? ax[i] : -ax[-i];
  }
  for (int j = 0; j < 4; ++j) {
    double w = 1.0;
    for (int l = 0; l < 4; ++l)
      if (l != j) w *= (xq - xs[l]) / (xs[j] - xs[l]);
    s.w[j] = w;
  }
  return s;
}

}  // namespace

complex RadialProfile::eval_tensor(double x, double y) const {
  if (x > axis1.back() + 1e-9 || y > axis2.back() + 1e-9) return {0.0, 0.0};
  const Stencil sx = axis_stencil(axis1, std::min(x, axis1.back()));
  const Stencil sy = axis_stencil(axis2, std::min(y, axis2.back()));
  const size_t n2 = axis2.size();
  complex acc{0.0, 0.0};
  for (int i = 0; i < 4; ++i) {
    complex row{0.0, 0.0};
    for (int j = 0; j < 4; ++j)
      row += sy.w[j] * values[sx.idx[i] * n2 + sy.idx[j]];
    acc += sx.w[i] * row;
  }
  return acc;
}

complex RadialProfile::eval(const RadialPoint& x) const {
  switch (kind) {
    case Kind::Grid1D:
      return interp1_(x.r[0]);
    case Kind::Tensor2D:
      return eval_tensor(x.r[0], x.r[1]);
    case Kind::WeightedRadial2D:
      return r_over_sinh(x.r[0]) * r_over_sinh(x.r[1]) * interp1_(x.norm());
  }
  return {0.0, 0.0};
}

complex RadialProfile::eval1(double r) const {
  if (kind != Kind::Grid1D)
    throw std::logic_error("RadialProfile::eval1: rank-1 profile required");
  return interp1_(r);
}

double RadialProfile::max_abs() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

double RadialProfile::extent() const {
  if (kind == Kind::Tensor2D)
    return std::min(axis1.back(), axis2.back());
  return axis1.back();
}

SpectralProfile SpectralProfile::radial_samples(int dim, std::vector<double> lam,
                                                std::vector<complex> v,
                                                double support_radius) {
  SpectralProfile p;
  p.dim = dim;
  p.radial = true;
  p.axis1 = std::move(lam);
  p.values = std::move(v);
  p.support_radius = support_radius;
  p.finalize();
  return p;
}

SpectralProfile SpectralProfile::tensor2d(std::vector<double> l1,
                                          std::vector<double> l2,
                                          std::vector<complex> v,
                                          double support_radius) {
  SpectralProfile p;
  p.dim = 2;
  p.radial = false;
  p.axis1 = std::move(l1);
  p.axis2 = std::move(l2);
  p.values = std::move(v);
  p.support_radius = support_radius;
  if (p.values.size() != p.axis1.size() * p.axis2.size())
    throw std::invalid_argument("SpectralProfile: tensor value count mismatch");
  return p;
}

void SpectralProfile::finalize() {
  if (radial) {
    if (values.size() != axis1.size())
      throw std::invalid_argument("SpectralProfile: value count mismatch");
    interp1_ = Interp1D(axis1, values);
  }
}

complex SpectralProfile::eval_radial(double lambda_norm) const {
  if (!radial)
    throw std::logic_error("SpectralProfile::eval_radial: non-radial symbol");
  return interp1_(lambda_norm);
}

complex SpectralProfile::eval_tensor(double x, double y) const {
  if (x > axis1.back() + 1e-9 || y > axis2.back() + 1e-9) return {0.0, 0.0};
  const Stencil sx = axis_stencil(axis1, std::min(x, axis1.back()));
  const Stencil sy = axis_stencil(axis2, std::min(y, axis2.back()));
  const size_t n2 = axis2.size();
  complex acc{0.0, 0.0};
  for (int i = 0; i < 4; ++i) {
    complex row{0.0, 0.0};
    for (int j = 0; j < 4; ++j)
      row += sy.w[j] * values[sx.idx[i] * n2 + sy.idx[j]];
    acc += sx.w[i] * row;
  }
  return acc;
}

complex SpectralProfile::eval(const SpectralPoint& p) const {
  if (radial) return eval_radial(p.norm());
  return eval_tensor(std::abs(p.lambda[0]), std::abs(p.lambda[1]));
}

namespace {

void write_rows(std::ofstream& out, const std::vector<double>& a1,
                const std::vector<double>* a2,
                const std::vector<complex>& v) {
  char buf[160];
  if (!a2) {
    for (size_t i = 0; i < a1.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", a1[i],
                    v[i].real(), v[i].imag());
      out << buf;
    }
  } else {
    for (size_t i = 0; i < a1.size(); ++i)
      for (size_t j = 0; j < a2->size(); ++j) {
        const complex& z = v[i * a2->size() + j];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", a1[i],
                      (*a2)[j], z.real(), z.imag());
        out << buf;
      }
  }
}

}  // namespace

void write_profile_csv(const std::string& path, const RadialProfile& p) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  if (p.kind == RadialProfile::Kind::Tensor2D) {
    out << "r1,r2,re,im\n";
    write_rows(out, p.axis1, &p.axis2, p.values);
  } else {
    out << (p.kind == RadialProfile::Kind::Grid1D ? "r,re,im\n" : "R,re,im\n");
    write_rows(out, p.axis1, nullptr, p.values);
  }
}

void write_profile_csv(const std::string& path, const SpectralProfile& p) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  if (p.radial) {
    out << "lambda,re,im\n";
    write_rows(out, p.axis1, nullptr, p.values);
  } else {
    out << "lambda1,lambda2,re,im\n";
    write_rows(out, p.axis1, &p.axis2, p.values);
  }
}

std::vector<double> uniform_grid(double a, double b, double h) {
  if (!(b > a) || !(h > 0.0)) throw std::invalid_argument("uniform_grid");
  const int n = std::max(4, static_cast<int>(std::ceil((b - a) / h)));
  std::vector<double> g(n + 1);
  for (int i = 0; i <= n; ++i) g[i] = a + (b - a) * static_cast<double>(i) / n;
  return g;
}

}  // namespace osk
