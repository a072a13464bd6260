#include "hetero2st/point_cloud.hpp"

#include <string>
#include <utility>

#include "hetero2st/errors.hpp"

namespace hetero2st {

PointCloud::PointCloud(Matrix points) : points_(std::move(points)) {
  if (points_.rows() < 1 || points_.cols() < 1) {
    throw InvalidSpec("point cloud must have at least one row and one column, got " +
                      std::to_string(points_.rows()) + "x" +
                      std::to_string(points_.cols()));
  }
  if (!points_.allFinite()) {
    throw NonFiniteInput("point cloud contains NaN or Inf entries");
  }
}

PointCloud PointCloud::select_rows(const std::vector<std::int32_t>& rows) const {
  Matrix out(static_cast<Eigen::Index>(rows.size()), points_.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out.row(static_cast<Eigen::Index>(k)) = points_.row(rows[k]);
  }
  return PointCloud(std::move(out));
}

}  // namespace hetero2st
