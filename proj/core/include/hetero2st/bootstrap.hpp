#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hetero2st/clustering.hpp"
#include "hetero2st/edge_counts.hpp"
#include "hetero2st/permutation.hpp"
#include "hetero2st/point_cloud.hpp"

namespace hetero2st {

/// Every test the library can run: the three permutation-calibrated
/// edge-count tests and their bootstrap-calibrated composite-null versions.
enum class TestKind { ec, gec, wec, bgec, bwec };

std::string to_string(TestKind kind);
TestKind test_kind_from_string(const std::string& name);

enum class WeightMode { corner, dirichlet_uniform };

/// Point on the k-simplex used to mix the baseline classes.
struct MixingWeights {
  std::vector<double> lambdas;
  WeightMode mode = WeightMode::corner;
};

/// Mixing weights for one bootstrap round (round_index is 1-based).
/// corner: round b picks corner 1 + (b-1 mod k_hat), so every corner is
/// visited floor(B/k) or ceil(B/k) times; the seed is unused.
/// dirichlet_uniform: uniform draw from the simplex.
MixingWeights sample_mixing_weights(int k_hat, WeightMode mode,
                                    std::int64_t round_index, std::uint64_t seed);

struct BootstrapConfig {
  int b_rounds = 200;
  double alpha = 0.05;
  int ell = 5;
  WeightMode weight_mode = WeightMode::corner;
  int kmax = 10;
  double ps_threshold = 0.80;
  std::uint64_t seed = 0;
  int kmeans_max_iter = 100;

  /// Throws InvalidSpec unless b_rounds >= 50 and 0 < alpha < 1.
  void validate() const;
};

/// Row partition produced by one bootstrap round: the drawn surrogate rows
/// and the residual baseline rows, both ascending, disjoint, covering every
/// row of the baseline sample.
struct SurrogateSplit {
  std::vector<std::int32_t> surrogate_rows;
  std::vector<std::int32_t> residual_rows;
};

/// Stratified draw of ceil(m * lambda_a) rows without replacement from each
/// class. Returns nullopt when some class cannot supply its quota; that is a
/// signaled outcome (the round is redrawn), not a failure.
std::optional<SurrogateSplit> bootstrap_surrogate_split(
    const ClusterModel& model, const PointCloud& x, const MixingWeights& weights,
    std::int64_t m, std::uint64_t seed);

/// The per-round material of the bootstrap: the composite-null surrogate
/// two-samples all live on the baseline point set, so the pooled l-MST is
/// built once and each round only relabels nodes and recounts edges.
struct BootstrapEnsemble {
  int k_hat = 1;
  std::int64_t attempts = 0;  // rounds attempted, including infeasible ones
  LabeledGraph graph;         // l-MST over the baseline sample, labels unset
  std::vector<EdgeCounts> round_counts;   // size b_rounds
  std::vector<std::int64_t> round_m;      // surrogate sample size per round
  std::int64_t baseline_n = 0;
};

/// Run the calibration rounds for the baseline sample x against a surrogate
/// sample size m. Requires m < n; throws TooManyInfeasibleRounds when
/// b_rounds feasible rounds cannot be collected within 20 * b_rounds
/// attempts.
BootstrapEnsemble bootstrap_ensemble(const PointCloud& x, std::int64_t m,
                                     const BootstrapConfig& cfg);

/// Statistics of the ensemble rounds for kind gec or wec.
std::vector<double> ensemble_statistics(const BootstrapEnsemble& ensemble,
                                        StatisticKind kind);

struct BootstrapCutoffResult {
  double cutoff = 0.0;  // +inf when no ensemble value qualifies
  std::vector<double> stats;
  int k_hat = 1;
  std::int64_t attempts = 0;
};

/// Level-alpha bootstrap cutoff: the smallest ensemble statistic whose
/// ensemble exceedance fraction is <= alpha.
BootstrapCutoffResult bootstrap_cutoff(const PointCloud& x, std::int64_t m,
                                       StatisticKind kind,
                                       const BootstrapConfig& cfg);

/// Outcome of one test on one pair of samples, with full provenance.
struct TestReport {
  TestKind kind = TestKind::bwec;
  std::string calibration;  // "bootstrap" or "permutation"
  double observed = 0.0;
  double cutoff = 0.0;  // +inf = cannot reject; NaN for permutation tests
  double p_value = 1.0;
  bool reject = false;
  double alpha = 0.05;
  int ell = 5;
  std::int64_t rounds = 0;  // bootstrap rounds or permutation draws
  int k_hat = 0;            // 0 when not estimated
  std::int64_t feasible_rounds = 0;
  std::int64_t attempted_rounds = 0;
  std::int64_t n = 0, m = 0, d = 0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
  std::vector<std::string> warnings;
};

/// The composite-null test: observed statistic on the pooled (x, y) l-MST,
/// cutoff from the bootstrap ensemble of x alone, p-value the add-one
/// exceedance fraction, reject iff observed > cutoff.
/// kind must be bgec or bwec.
TestReport heterogeneous_test(const PointCloud& x, const PointCloud& y,
                              TestKind kind, const BootstrapConfig& cfg);

/// Run several kinds on the same pair, sharing the pooled graph, the
/// bootstrap ensemble (bgec/bwec) and the permutation draws (ec/gec/wec).
/// Reports come back in the order requested.
std::vector<TestReport> heterogeneous_test_all(const PointCloud& x,
                                               const PointCloud& y,
                                               const std::vector<TestKind>& kinds,
                                               const BootstrapConfig& cfg,
                                               std::int64_t permutation_draws = 1000);

}  // namespace hetero2st
