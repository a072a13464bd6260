#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hetero2st/distance.hpp"

namespace hetero2st {

/// Undirected graph over the pooled sample plus per-node sample labels
/// (1 = first sample, 2 = second sample). Edges are stored with i < j.
struct LabeledGraph {
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  std::vector<std::uint8_t> labels;  // empty until attached by the caller
  int ell = 1;
  std::int32_t num_nodes = 0;

  std::int64_t edge_count() const {
    return static_cast<std::int64_t>(edges.size());
  }
};

/// Union of ell successively edge-disjoint minimum spanning trees of the
/// complete graph on the distance matrix: tree k is the MST with all edges
/// of trees 1..k-1 excluded. Ties between equal-length edges are broken
/// lexicographically by (length, i, j), which makes the result deterministic
/// and equal to greedy selection over the fully sorted edge list.
/// Labels are left empty; attach them with attach_labels.
/// Throws GraphTooSmall when N <= ell and DisconnectedAfterExclusion when a
/// later tree cannot be completed.
LabeledGraph build_lmst(const DistanceMatrix& dist, int ell);

/// Label the first n nodes as sample 1 and the remaining m as sample 2.
void attach_labels(LabeledGraph& graph, std::int64_t n, std::int64_t m);

/// Sum of edge lengths of tree k (0-based) given the graph was built with
/// trees stacked in order; used by invariant checks.
double tree_length(const LabeledGraph& graph, const DistanceMatrix& dist,
                   int tree_index);

}  // namespace hetero2st
