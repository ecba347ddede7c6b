#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "osk/common.hpp"
#include "osk/space_model.hpp"

namespace osk {

/// Local 4-point Lagrange-cubic interpolation on a strictly increasing grid.
/// When the grid starts at the axis origin the function is treated as even and
/// the stencil is reflected through 0, which keeps full order at the origin.
/// Evaluation beyond the last node returns 0 (profiles are stored out to where
/// they have decayed).
class Interp1D {
 public:
  Interp1D() = default;
  Interp1D(std::vector<double> x, std::vector<complex> y);

  complex operator()(double x) const;
  bool empty() const { return x_.empty(); }
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

 private:
  std::vector<double> x_;
  std::vector<complex> y_;
  bool even_origin_ = false;

  double node_x(int i) const { return i >= 0 ? x_[i] : -x_[-i]; }
  const complex& node_y(int i) const { return i >= 0 ? y_[i] : y_[-i]; }
};

/// Sampled radial function. Three storage layouts:
///  - Grid1D: rank-1 profile over r.
///  - Tensor2D: rank-2 profile over a tensor grid (r1, r2), row-major.
///  - WeightedRadial2D: rank-2 profile of the form
///        f(r1, r2) = (r1/sinh r1)(r2/sinh r2) * V(||H||),
///    which is the shape of every kernel of a ||lambda||-radial symbol on the
///    product model; V is sampled over R = ||H||.
struct RadialProfile {
  enum class Kind { Grid1D, Tensor2D, WeightedRadial2D };

  Kind kind = Kind::Grid1D;
  int dim = 1;
  std::vector<double> axis1;
  std::vector<double> axis2;
  std::vector<complex> values;

  static RadialProfile grid1d(std::vector<double> r, std::vector<complex> v);
  static RadialProfile tensor2d(std::vector<double> r1, std::vector<double> r2,
                                std::vector<complex> v);
  static RadialProfile weighted_radial(std::vector<double> R,
                                       std::vector<complex> v);

  static RadialProfile sample1d(const std::vector<double>& r,
                                const std::function<complex(double)>& f);
  static RadialProfile sample2d(const std::vector<double>& r1,
                                const std::vector<double>& r2,
                                const std::function<complex(double, double)>& f);

  complex eval(const RadialPoint& x) const;
  complex eval1(double r) const;  // rank-1 only
  double max_abs() const;
  double extent() const;  // largest ||H|| covered along an axis

  void finalize();  // (re)build interpolants after editing values

 private:
  Interp1D interp1_;                 // Grid1D / WeightedRadial2D
  std::vector<Interp1D> rows_;       // unused; Tensor2D uses direct stencils
  complex eval_tensor(double x, double y) const;
};

/// Sampled spectral symbol. `radial` means the samples are a function of
/// ||lambda|| (always the case in rank 1); a rank-2 non-radial symbol is a
/// tensor grid over the positive cone.
struct SpectralProfile {
  int dim = 1;
  bool radial = true;
  std::vector<double> axis1;
  std::vector<double> axis2;
  std::vector<complex> values;
  double support_radius = 0.0;

  static SpectralProfile radial_samples(int dim, std::vector<double> lam,
                                        std::vector<complex> v,
                                        double support_radius);
  static SpectralProfile tensor2d(std::vector<double> l1, std::vector<double> l2,
                                  std::vector<complex> v, double support_radius);

  complex eval_radial(double lambda_norm) const;
  complex eval(const SpectralPoint& p) const;

  void finalize();

 private:
  Interp1D interp1_;
  complex eval_tensor(double x, double y) const;
};

/// CSV serialization: one row per sample, columns "grid coords..., re, im".
void write_profile_csv(const std::string& path, const RadialProfile& p);
void write_profile_csv(const std::string& path, const SpectralProfile& p);

/// Uniform grid helper: [a, b] with step at most h (endpoints included).
std::vector<double> uniform_grid(double a, double b, double h);

}  // namespace osk
