#pragma once

#include <functional>

#include "hetero2st/asymptotics.hpp"
#include "hetero2st/point_cloud.hpp"

namespace hetero2st {

/// Univariate density with interval support [lo, hi]; must integrate to one
/// within quadrature tolerance.
struct Density1D {
  std::function<double(double)> pdf;
  double lo = 0.0;
  double hi = 1.0;
};

/// Plug-in divergence estimate: the weighted edge-count statistic of the
/// pooled ell-MST rescaled by (1 + rho)^2 / (ell rho) with rho = n/m. Equals
/// one in the limit when the two samples share a distribution.
double hp_divergence_estimate(const PointCloud& x, const PointCloud& y, int ell);

/// Adaptive quadrature of (rho fx^2 + fy^2) / (rho fx + fy) over the union
/// of the supports. Serves as the independent oracle for the plug-in
/// estimator. Throws QuadratureNonconvergent when the error estimate stays
/// above abs_tol and InvalidSpec when a density does not integrate to one.
double hp_divergence_quadrature(const Density1D& fx, const Density1D& fy,
                                double rho, double abs_tol = 1e-6);

/// Truncated-L2 separation predicate: whether
/// integral over {fx > kappa} of (fy - fx)^2 exceeds
/// 2 m2^3 (1+rho)^3 k^2 / (rho^3 l_bound kappa^2). Reported as a diagnostic;
/// not wired into any test decision.
bool truncated_l2_condition(const Density1D& fx, const Density1D& fy,
                            double kappa, const AsymptoticParams& p,
                            double abs_tol = 1e-6);

}  // namespace hetero2st
