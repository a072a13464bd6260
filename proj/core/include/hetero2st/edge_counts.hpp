#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "hetero2st/lmst.hpp"

namespace hetero2st {

/// Within/between edge counts on a labeled graph:
/// r1 = edges with both endpoints in sample 1, r2 = both in sample 2,
/// r0 = mixed. r0 + r1 + r2 == total.
struct EdgeCounts {
  std::int64_t r0 = 0;
  std::int64_t r1 = 0;
  std::int64_t r2 = 0;
  std::int64_t total = 0;
};

enum class StatisticKind { ec, gec, wec };

/// How permutation-null moments were obtained.
enum class MomentMethod { exact_enumeration, monte_carlo, closed_form };

/// First two moments of (R1, R2) under uniformly random relabeling of the
/// pooled nodes with n sample-1 labels.
struct PermutationMoments {
  double mu1 = 0.0;
  double mu2 = 0.0;
  Eigen::Matrix2d sigma = Eigen::Matrix2d::Zero();
  MomentMethod method = MomentMethod::closed_form;
  std::int64_t draws = 0;  // Monte Carlo only
};

/// Throws SingleSample when all labels are identical.
EdgeCounts count_edges(const LabeledGraph& graph);

/// Count under an explicit label vector (1/2 per node), same contract.
EdgeCounts count_edges(const LabeledGraph& graph,
                       const std::vector<std::uint8_t>& labels);

/// Weighted within-sample edge sum ((m/N) R1 + (n/N) R2) / N, evaluated from
/// the exact integer numerator m*R1 + n*R2.
double wec_statistic(const EdgeCounts& counts, std::int64_t n, std::int64_t m);

/// Mahalanobis form of the centered (R1, R2) under the permutation null.
/// Throws SingularCovariance when sigma is numerically singular.
double gec_statistic(const EdgeCounts& counts, const PermutationMoments& moments,
                     double condition_bound = 1e12);

}  // namespace hetero2st
