#include "hetero2st/hp_divergence.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <vector>

#include "hetero2st/distance.hpp"
#include "hetero2st/edge_counts.hpp"
#include "hetero2st/errors.hpp"
#include "hetero2st/lmst.hpp"

namespace hetero2st {

double hp_divergence_estimate(const PointCloud& x, const PointCloud& y, int ell) {
  const auto n = static_cast<double>(x.rows());
  const auto m = static_cast<double>(y.rows());
  if (x.rows() < 2 || y.rows() < 2) {
    throw TooFewPoints("divergence estimation needs n, m >= 2");
  }
  const DistanceMatrix dist = pairwise_distances(x, y);
  LabeledGraph graph = build_lmst(dist, ell);
  attach_labels(graph, x.rows(), y.rows());
  const double rw = wec_statistic(count_edges(graph), x.rows(), y.rows());
  const double rho = n / m;
  return rw * (1.0 + rho) * (1.0 + rho) / (static_cast<double>(ell) * rho);
}

namespace {

using boost::math::quadrature::gauss_kronrod;

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol) {
  if (!(hi > lo)) return 0.0;
  double error = 0.0;
  const double value =
      gauss_kronrod<double, 15>::integrate(f, lo, hi, 15, abs_tol, &error);
  if (!(error <= abs_tol * 10.0 + 1e-14)) {
    throw QuadratureNonconvergent("quadrature error estimate " +
                                  std::to_string(error) + " above tolerance");
  }
  return value;
}

// Break the union of the two supports at every support endpoint so the
// integrand is smooth on each piece even when a density is discontinuous at
// its boundary.
std::vector<std::pair<double, double>> union_segments(const Density1D& fx,
                                                      const Density1D& fy) {
  std::vector<double> cuts{fx.lo, fx.hi, fy.lo, fy.hi};
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::pair<double, double>> segs;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (!(b > a)) continue;
    const bool in_x = a >= fx.lo && b <= fx.hi;
    const bool in_y = a >= fy.lo && b <= fy.hi;
    if (in_x || in_y) segs.emplace_back(a, b);
  }
  return segs;
}

double density_at(const Density1D& f, double x) {
  if (x < f.lo || x > f.hi) return 0.0;
  return f.pdf(x);
}

void check_normalized(const Density1D& f, double abs_tol, const char* which) {
  const double mass = integrate([&](double t) { return density_at(f, t); }, f.lo,
                                f.hi, abs_tol);
  if (std::abs(mass - 1.0) > 1e-4) {
    throw InvalidSpec(std::string(which) + " density integrates to " +
                      std::to_string(mass) + ", expected 1");
  }
}

}  // namespace

double hp_divergence_quadrature(const Density1D& fx, const Density1D& fy,
                                double rho, double abs_tol) {
  if (!(rho > 0.0)) throw InvalidSpec("rho must be positive");
  check_normalized(fx, abs_tol, "fx");
  check_normalized(fy, abs_tol, "fy");
  double total = 0.0;
  for (const auto& [a, b] : union_segments(fx, fy)) {
    total += integrate(
        [&](double t) {
          const double gx = density_at(fx, t);
          const double gy = density_at(fy, t);
          const double den = rho * gx + gy;
          if (den <= 0.0) return 0.0;
          return (rho * gx * gx + gy * gy) / den;
        },
        a, b, abs_tol);
  }
  return total;
}

bool truncated_l2_condition(const Density1D& fx, const Density1D& fy,
                            double kappa, const AsymptoticParams& p,
                            double abs_tol) {
  p.validate();
  if (!(kappa > 0.0)) throw InvalidSpec("kappa must be positive");
  double mass = 0.0;
  for (const auto& [a, b] : union_segments(fx, fy)) {
    mass += integrate(
        [&](double t) {
          const double gx = density_at(fx, t);
          if (gx <= kappa) return 0.0;
          const double diff = density_at(fy, t) - gx;
          return diff * diff;
        },
        a, b, abs_tol);
  }
  const double kk = static_cast<double>(p.k) * p.k;
  const double eps_tilde_sq = 2.0 * p.m2 * p.m2 * p.m2 * (1.0 + p.rho) *
                              (1.0 + p.rho) * (1.0 + p.rho) * kk /
                              (p.rho * p.rho * p.rho * p.l_bound);
  return mass >= eps_tilde_sq / (kappa * kappa);
}

}  // namespace hetero2st
