#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hetero2st/edge_counts.hpp"

namespace hetero2st {

/// Moments of (R1, R2) under the permutation null.
///
/// exact_enumeration: averages over every assignment of n sample-1 labels to
/// the N nodes; requires C(N, n) <= 1e6 (EnumerationTooLarge otherwise).
/// monte_carlo: estimates from `draws` (>= 100, InsufficientDraws otherwise)
/// uniform random label assignments; deterministic given the seed and
/// identical for any thread count.
/// closed_form: per-edge inclusion probabilities over the graph summaries
/// |E|, sum of deg-choose-2, and the disjoint-pair count; validated against
/// exact enumeration in the test suite before being relied on.
PermutationMoments permutation_moments(const LabeledGraph& graph, std::int64_t n,
                                       std::int64_t m, MomentMethod method,
                                       std::int64_t draws = 0,
                                       std::uint64_t seed = 0);

struct PermutationPValueOptions {
  std::int64_t draws = 1000;
  std::uint64_t seed = 0;
  /// Enumerate all C(N, n) assignments instead of sampling; the p-value is
  /// then the exact exceedance fraction with no add-one correction.
  bool exhaustive = false;
};

/// Permutation p-value of the observed statistic on the graph's own labels.
/// GEC/WEC reject for large values; EC rejects for small R0. Sampled p-values
/// use the add-one correction (1 + exceedances) / (1 + draws).
double permutation_pvalue(StatisticKind kind, const LabeledGraph& graph,
                          std::int64_t n, std::int64_t m,
                          const PermutationPValueOptions& opts);

/// One pass computing the p-value of several kinds from a shared set of
/// permutations (same draws, same seed for every kind).
std::map<StatisticKind, double> permutation_pvalues(
    const std::vector<StatisticKind>& kinds, const LabeledGraph& graph,
    std::int64_t n, std::int64_t m, const PermutationPValueOptions& opts);

/// Step-5-style ensemble cutoff: smallest value whose ensemble exceedance
/// fraction is <= alpha; +inf when no value qualifies (never reject).
double ensemble_upper_cutoff(const std::vector<double>& stats, double alpha);

}  // namespace hetero2st
