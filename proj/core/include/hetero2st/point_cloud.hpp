#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace hetero2st {

/// Row-major so that observation rows are contiguous.
using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// One sample: n observations of dimension d, rows are observations.
/// Row order is the identity of the observations and is never reordered.
/// All entries are finite; n >= 1 and d >= 1.
class PointCloud {
 public:
  /// Throws NonFiniteInput on NaN/Inf entries, InvalidSpec on empty shape.
  explicit PointCloud(Matrix points);

  Eigen::Index rows() const { return points_.rows(); }
  Eigen::Index dim() const { return points_.cols(); }
  const Matrix& points() const { return points_; }
  auto row(Eigen::Index i) const { return points_.row(i); }

  /// New cloud holding the given rows of this one, in the given order.
  PointCloud select_rows(const std::vector<std::int32_t>& rows) const;

 private:
  Matrix points_;
};

}  // namespace hetero2st
