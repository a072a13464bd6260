#pragma once

#include <cstdint>
#include <vector>

#include "hetero2st/point_cloud.hpp"

namespace hetero2st {

/// k-means fit of the baseline sample: class index per row (0-based
/// internally, all classes nonempty) plus class sizes and centroids.
struct ClusterModel {
  int k_hat = 1;
  std::vector<std::int32_t> assignments;
  std::vector<std::int64_t> class_sizes;
  Matrix centroids;
};

/// Seeded k-means++ initialization followed by Lloyd iterations (at most
/// max_iter). An init that leaves a cluster empty is retried with a fresh
/// derived seed up to 10 times; EmptyClusterUnrecoverable after that.
ClusterModel cluster_baseline(const PointCloud& x, int k_hat, std::uint64_t seed,
                              int max_iter = 100);

/// Prediction strength of k clusters: split x into two random halves,
/// cluster both, and score the minimum over test clusters of the fraction of
/// same-test-cluster pairs that are co-assigned by the training centroids.
/// By convention ps(1) = 1; a k the halves cannot support scores 0.
double prediction_strength(const PointCloud& x, int k, std::uint64_t seed);

/// Largest k in 1..kmax with prediction strength >= ps_threshold.
/// Requires n >= 2 * kmax (TooFewPoints otherwise).
int estimate_num_clusters(const PointCloud& x, int kmax, double ps_threshold,
                          std::uint64_t seed);

}  // namespace hetero2st
