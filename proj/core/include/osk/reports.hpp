#pragma once

#include <string>
#include <vector>

#include "osk/common.hpp"

namespace osk {

/// Least-squares fit of log2(value) against the index.
struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_abs_residual = 0.0;
  int npoints = 0;
  double x_min = 0.0, x_max = 0.0;
};

/// One verification report: per-index rows plus the fitted exponent and the
/// pass verdict against the stated criterion.
struct NormReport {
  std::string quantity;
  struct Row {
    double j = 0.0;
    double q = 0.0;
    double aux = 0.0;    // tau, k, p, ... depending on the quantity
    double value = 0.0;
    double value2 = 0.0; // secondary route / compensated value
    bool flag = false;   // per-row marker (extrapolated, degenerate, ...)
  };
  std::vector<Row> rows;
  ExponentFit fit;
  double target = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

/// Kunze-Stein certificate report for one p (or Gamma profile).
struct KSReport {
  double p = 2.0;
  double eta_norm = 0.0;
  double s_p = 1.0;
  double rho_p_coeff = 0.0;
  double nu = 0.0;             // spherical weight index actually used
  double integral_value = 0.0; // KS integral over the global region
  double tail_estimate = 0.0;  // extrapolated contribution beyond the profile
  std::vector<double> ij;      // unit-annulus contributions, j = 1, 2, ...
  int first_extrapolated = -1; // index into ij, -1 if none
  double tail_ratio = 0.0;     // max_{j >= j0} I_{j+1}/I_j
  int ratio_from = 5;
  bool converged = false;
  bool passed = false;
  std::string note;
};

}  // namespace osk
