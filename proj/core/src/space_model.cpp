#include "osk/space_model.hpp"

namespace osk {

RadialPoint RadialPoint::of(double r0) {
  if (r0 < 0.0) throw std::invalid_argument("RadialPoint: radius must be >= 0");
  RadialPoint p;
  p.r = {r0, 0.0};
  p.dim = 1;
  return p;
}

RadialPoint RadialPoint::of(double r0, double r1) {
  if (r0 < 0.0 || r1 < 0.0)
    throw std::invalid_argument("RadialPoint: radii must be >= 0");
  RadialPoint p;
  p.r = {r0, r1};
  p.dim = 2;
  return p;
}

SpectralPoint SpectralPoint::of(double l0, double v) {
  if (v < 0.0 || v > 1.0)
    throw std::invalid_argument("SpectralPoint: tube_v must lie in [0, 1]");
  SpectralPoint p;
  p.lambda = {l0, 0.0};
  p.dim = 1;
  p.tube_v = v;
  return p;
}

SpectralPoint SpectralPoint::of(double l0, double l1, double v) {
  if (v < 0.0 || v > 1.0)
    throw std::invalid_argument("SpectralPoint: tube_v must lie in [0, 1]");
  SpectralPoint p;
  p.lambda = {l0, l1};
  p.dim = 2;
  p.tube_v = v;
  return p;
}

RegionSpec RegionSpec::ball(double R) {
  if (R <= 0.0) throw std::invalid_argument("RegionSpec: ball radius must be > 0");
  return {Kind::Ball, R, 0};
}

RegionSpec RegionSpec::annulus(int q) { return {Kind::Annulus, 0.0, q}; }

RegionSpec RegionSpec::tail(double R) {
  if (R <= 0.0) throw std::invalid_argument("RegionSpec: tail radius must be > 0");
  return {Kind::Tail, R, 0};
}

double RegionSpec::lo() const {
  switch (kind) {
    case Kind::All: return 0.0;
    case Kind::Ball: return 0.0;
    case Kind::Annulus: return std::exp2(0.5 * q);
    case Kind::Tail: return radius;
  }
  return 0.0;
}

double RegionSpec::hi(double r_cut) const {
  switch (kind) {
    case Kind::All: return r_cut;
    case Kind::Ball: return std::min(radius, r_cut);
    case Kind::Annulus: return std::exp2(0.5 * (q + 1));
    case Kind::Tail: return r_cut;
  }
  return r_cut;
}

SpaceModel SpaceModel::h3() {
  SpaceModel m;
  m.kind = SpaceKind::H3;
  m.n = 3;
  m.d = 1;
  m.rho = {1.0, 0.0};
  m.rho_norm = 1.0;
  m.rho_norm_sq = 1.0;
  m.weyl_order = 2;
  m.b = 2;
  m.b_prime = 1;
  return m;
}

SpaceModel SpaceModel::h3xh3() {
  SpaceModel m;
  m.kind = SpaceKind::H3xH3;
  m.n = 6;
  m.d = 2;
  m.rho = {1.0, 1.0};
  m.rho_norm = sqrt2;
  m.rho_norm_sq = 2.0;
  m.weyl_order = 4;
  m.b = 4;
  m.b_prime = 2;
  return m;
}

SpaceModel SpaceModel::from_id(std::string_view id) {
  if (id == "h3") return h3();
  if (id == "h3xh3") return h3xh3();
  throw std::invalid_argument("unknown model id: " + std::string(id) +
                              " (expected \"h3\" or \"h3xh3\")");
}

std::string SpaceModel::id() const {
  return kind == SpaceKind::H3 ? "h3" : "h3xh3";
}

namespace {

constexpr double kSeriesCut = 1e-4;

void check_dim(const SpaceModel& m, int dim, const char* what) {
  if (m.d != dim)
    throw std::invalid_argument(std::string(what) +
                                ": point rank does not match model rank");
}

}  // namespace

double r_over_sinh(double r) {
  if (std::abs(r) < kSeriesCut) {
    const double r2 = r * r;
    return 1.0 - r2 / 6.0 + 7.0 * r2 * r2 / 360.0 - 31.0 * r2 * r2 * r2 / 15120.0;
  }
  return r / std::sinh(r);
}

complex sinc_c(complex z) {
  if (std::abs(z) < kSeriesCut) {
    const complex z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0 - z2 * z2 * z2 / 5040.0;
  }
  return std::sin(z) / z;
}

double sinh_ratio(double nu, double r) {
  if (nu < 0.0) nu = -nu;  // even in nu
  if (nu * r < kSeriesCut || r < kSeriesCut) {
    // sinh(nu r)/(nu r) * (r / sinh r), both factors near their limits
    const double a = nu * r;
    const double s1 = 1.0 + a * a / 6.0 + a * a * a * a / 120.0;
    return s1 * r_over_sinh(r);
  }
  if (r < 20.0) return std::sinh(nu * r) / (nu * std::sinh(r));
  // exponential form for large radii
  const double e1 = -std::expm1(-2.0 * nu * r);
  const double e2 = -std::expm1(-2.0 * r);
  return std::exp((nu - 1.0) * r) * e1 / (nu * e2);
}

complex spherical_function(const SpaceModel& m, const SpectralPoint& p,
                           const RadialPoint& x) {
  check_dim(m, p.dim, "spherical_function");
  check_dim(m, x.dim, "spherical_function");
  complex out{1.0, 0.0};
  for (int i = 0; i < m.d; ++i) {
    const complex mu{p.lambda[i], -p.tube_v * m.rho[i]};
    out *= sinc_c(mu * x.r[i]) * r_over_sinh(x.r[i]);
  }
  return out;
}

double plancherel_density(const SpaceModel& m, const SpectralPoint& p) {
  check_dim(m, p.dim, "plancherel_density");
  if (p.tube_v != 0.0)
    throw std::domain_error("plancherel_density: real spectrum only (tube_v = 0)");
  double out = 1.0;
  for (int i = 0; i < m.d; ++i)
    out *= p.lambda[i] * p.lambda[i] / (2.0 * pi * pi);
  return out;
}

double volume_density(const SpaceModel& m, const RadialPoint& x) {
  check_dim(m, x.dim, "volume_density");
  double out = 1.0;
  for (int i = 0; i < m.d; ++i) {
    const double s = std::sinh(x.r[i]);
    out *= 4.0 * pi * s * s;
  }
  return out;
}

double heat_kernel(const SpaceModel& m, double t, const RadialPoint& x) {
  check_dim(m, x.dim, "heat_kernel");
  if (t <= 0.0) throw std::domain_error("heat_kernel: t must be > 0");
  double out = 1.0;
  const double gauss_norm = std::pow(4.0 * pi * t, -1.5);
  for (int i = 0; i < m.d; ++i) {
    out *= gauss_norm * std::exp(-t - x.r[i] * x.r[i] / (4.0 * t)) *
           r_over_sinh(x.r[i]);
  }
  return out;
}

double heat_kernel_log(const SpaceModel& m, double t, const RadialPoint& x) {
  check_dim(m, x.dim, "heat_kernel_log");
  if (t <= 0.0) throw std::domain_error("heat_kernel_log: t must be > 0");
  double out = 0.0;
  for (int i = 0; i < m.d; ++i) {
    out += -1.5 * std::log(4.0 * pi * t) - t - x.r[i] * x.r[i] / (4.0 * t) +
           std::log(r_over_sinh(x.r[i]));
  }
  return out;
}

double heat_kernel_sup(const SpaceModel& m, const RadialPoint& x, double t_min) {
  check_dim(m, x.dim, "heat_kernel_sup");
  if (t_min <= 0.0) throw std::domain_error("heat_kernel_sup: t_min must be > 0");
  const double h2 = x.norm() * x.norm();
  // d/dt log p = -n/(2t) - |rho|^2 + ||H||^2/(4 t^2); root in 1/t.
  double t_star = t_min;
  if (h2 > 0.0) {
    const double a = h2 / 4.0;
    const double y = (0.5 * m.n + std::sqrt(0.25 * m.n * m.n + h2 * m.rho_norm_sq)) /
                     (2.0 * a);
    t_star = 1.0 / y;
  }
  const double t_at = std::max(t_star, t_min);
  return std::exp(heat_kernel_log(m, t_at, x));
}

}  // namespace osk
