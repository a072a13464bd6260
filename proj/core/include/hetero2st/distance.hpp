#pragma once

#include <Eigen/Core>

#include "hetero2st/point_cloud.hpp"

namespace hetero2st {

enum class Metric { euclidean };

/// Symmetric nonnegative pairwise-distance matrix with zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix(Eigen::MatrixXd dist, Metric metric);

  Eigen::Index size() const { return dist_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return dist_(i, j); }
  const Eigen::MatrixXd& matrix() const { return dist_; }
  Metric metric() const { return metric_; }

 private:
  Eigen::MatrixXd dist_;
  Metric metric_;
};

/// Euclidean distances over the pooled sample, X rows first, Y rows after.
/// Throws DimensionMismatch when x.dim() != y.dim().
DistanceMatrix pairwise_distances(const PointCloud& x, const PointCloud& y);

/// Euclidean distances within a single sample.
DistanceMatrix pairwise_distances(const PointCloud& x);

}  // namespace hetero2st
