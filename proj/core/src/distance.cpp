#include "hetero2st/distance.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "hetero2st/errors.hpp"
#include "hetero2st/parallel.hpp"

namespace hetero2st {

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd dist, Metric metric)
    : dist_(std::move(dist)), metric_(metric) {}

namespace {

DistanceMatrix distances_of(const Matrix& pooled) {
  const Eigen::Index n = pooled.rows();
  Eigen::MatrixXd d(n, n);
  d.diagonal().setZero();
  // Each row i fills d(i, j) for j < i plus the mirror entry; rows are
  // independent so the parallel fill is bit-identical to the serial one.
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t ii) {
    const auto i = static_cast<Eigen::Index>(ii);
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = (pooled.row(i) - pooled.row(j)).norm();
      d(i, j) = v;
      d(j, i) = v;
    }
  });
  return DistanceMatrix(std::move(d), Metric::euclidean);
}

}  // namespace

DistanceMatrix pairwise_distances(const PointCloud& x, const PointCloud& y) {
  if (x.dim() != y.dim()) {
    throw DimensionMismatch("sample dimensions differ: " +
                            std::to_string(x.dim()) + " vs " +
                            std::to_string(y.dim()));
  }
  Matrix pooled(x.rows() + y.rows(), x.dim());
  pooled.topRows(x.rows()) = x.points();
  pooled.bottomRows(y.rows()) = y.points();
  return distances_of(pooled);
}

DistanceMatrix pairwise_distances(const PointCloud& x) {
  return distances_of(x.points());
}

}  // namespace hetero2st
