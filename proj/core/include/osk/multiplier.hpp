#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "osk/profiles.hpp"
#include "osk/smoothstep.hpp"
#include "osk/space_model.hpp"
#include "osk/transforms.hpp"

namespace osk {

/// Parameters of the oscillating symbol
///   m(lambda) = s^{-beta/2} exp(i s^{alpha/2}),  s = ||lambda||^2 + ||rho||^2.
struct MultiplierParams {
  double alpha = 0.5;
  double beta = 2.0;

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("alpha must lie in (0,1)");
    if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
  }
};

/// The dyadic partition: chi is the smoothstep cutoff (1 on [0,1], 0 from
/// sqrt2 on) and omega(t) = chi(t) - chi(sqrt2 t).
struct PartitionSpec {
  double chi(double t) const { return chi_cutoff(t); }
  double omega(double t) const { return omega_bump(t); }
};

/// One dyadic piece m_j and its rescaled semigroup symbol h_j.
struct DyadicSymbol {
  int j = 0;
  MultiplierParams params;
  SpaceModel model;
  PartitionSpec partition;

  DyadicSymbol(int j_, MultiplierParams p, SpaceModel m)
      : j(j_), params(p), model(std::move(m)) {
    if (j < 0) throw std::invalid_argument("DyadicSymbol: j must be >= 0");
    params.validate();
  }

  // spectral support of m_j in ||lambda||
  double lambda_lo() const { return std::exp2(0.5 * (j - 1)); }
  double lambda_hi() const { return std::exp2(0.5 * (j + 1)); }
  // support of m~_j on the spectral-value axis s = ||lambda||^2 + ||rho||^2
  double s_lo() const { return std::exp2(double(j) - 1.0) + model.rho_norm_sq; }
  double s_hi() const { return std::exp2(double(j) + 1.0) + model.rho_norm_sq; }
  // support of h_j in u = exp(-2^{-j} s)
  double u_lo() const { return std::exp(-std::ldexp(s_hi(), -j)); }
  double u_hi() const { return std::exp(-std::ldexp(s_lo(), -j)); }
};

/// Tube/derivative class data: symbols analytic in the tube of height v with
/// k-th derivatives decaying like <lambda>^{-k theta}.
struct SymbolClassParams {
  double v = 0.9;
  int N = 5;
  double theta = 0.5;

  void validate(const SpaceModel& m) const {
    if (!(v > 0.0 && v < 1.0))
      throw std::invalid_argument("symbol class: v must lie in (0,1)");
    if (!(theta > 0.0 && theta < 1.0))
      throw std::invalid_argument("symbol class: theta must lie in (0,1)");
    if (N <= (m.n + 1) / (2.0 * theta))
      throw std::invalid_argument("symbol class: need N > (n+1)/(2 theta)");
  }
};

/// Locally symmetric profile: ||eta_Gamma|| and the exponent map p -> s(p).
struct GammaProfile {
  double eta_norm = 0.0;
  std::function<double(double)> s_exponent = [](double) { return 1.0; };
};

/// Exponent bookkeeping for a given p.
struct ExponentContext {
  double p = 2.0;
  double p_prime = 2.0;
  double rho_p_coeff = 0.0;  // |2/p - 1|
  double v_gamma = 0.0;
};

// -- operations ---------------------------------------------------------------

/// m evaluated at lambda + i tube_v rho. Throws on the pole line tube_v >= 1.
complex eval_m(const MultiplierParams& params, const SpaceModel& m,
               const SpectralPoint& p);

/// The scalar symbol as a function of the (complex) spectral value s.
complex m_scalar(const MultiplierParams& params, complex s);

/// m~_j(s): the dyadic piece read on the spectral-value axis (exact, since m
/// and omega depend only on ||lambda||).
complex eval_m_tilde(const DyadicSymbol& sym, double s);

/// m_j(lambda) = m(lambda) omega(2^{-j/2} ||lambda||); real spectrum only.
complex eval_mj(const DyadicSymbol& sym, const SpectralPoint& p);

/// h_j(u) = m~_j(-2^j ln u) / u on (0, 1]; exactly zero outside
/// (e^{-2-eps_j}, e^{-1/2-eps_j}) with eps_j = 2^{-j} ||rho||^2.
complex eval_hj(const DyadicSymbol& sym, double u);

/// sup over the support annulus of |m_j|.
double sup_abs_mj(const DyadicSymbol& sym);

/// C^k norm of h_j (sum of sup norms of derivatives 0..k) by finite
/// differences on a support-refined grid; throws if the step-halving error
/// estimate exceeds 1% of the value. k <= 6.
double hj_ck_norm(const DyadicSymbol& sym, int k);

/// Envelope data |d^k m(lambda + i v rho)| sampled along a coordinate ray.
/// k <= 2 analytic (chain rule), k in {3,4} Richardson finite differences.
std::vector<std::pair<double, double>> tube_derivative_profile(
    const MultiplierParams& params, const SpaceModel& m,
    const SymbolClassParams& cls, int k, const std::vector<double>& lambda_grid);

/// Fills the conjugate exponent, rho_p coefficient and v_Gamma(p).
ExponentContext exponent_context(const SpaceModel& m, double p,
                                 const GammaProfile* profile = nullptr);

/// Partition-of-unity defect at radius t for cutoff level J:
///   chi(sqrt2 t) + sum_{j=0}^{J} omega(2^{-j/2} t) - 1.
double partition_unity_defect(int J, double t);

/// Low-frequency residual symbol m(lambda) chi(sqrt2 ||lambda||); supported in
/// ||lambda|| <= 1.
RadialSymbol residual_symbol(const MultiplierParams& params, const SpaceModel& m);

/// m_j as a radial symbol for transform work.
RadialSymbol dyadic_symbol_radial(const DyadicSymbol& sym);

}  // namespace osk
