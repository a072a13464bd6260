#include "hetero2st/lmst.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

#include "hetero2st/errors.hpp"

namespace hetero2st {

namespace {

// Candidate edge into the growing tree, ordered by (length, i, j) with
// i < j. Augmenting the length with the index pair makes all edge weights
// distinct, so the MST under this total order is unique and Prim selection
// matches greedy selection over the lexicographically sorted edge list.
struct Candidate {
  double length = std::numeric_limits<double>::infinity();
  std::int32_t i = -1;  // smaller endpoint
  std::int32_t j = -1;  // larger endpoint

  bool valid() const { return i >= 0; }
  bool operator<(const Candidate& o) const {
    if (length != o.length) return length < o.length;
    if (i != o.i) return i < o.i;
    return j < o.j;
  }
};

Candidate make_candidate(double length, std::int32_t a, std::int32_t b) {
  if (a > b) std::swap(a, b);
  return Candidate{length, a, b};
}

}  // namespace

LabeledGraph build_lmst(const DistanceMatrix& dist, int ell) {
  const auto n = static_cast<std::int32_t>(dist.size());
  if (ell < 1) throw InvalidSpec("ell must be >= 1, got " + std::to_string(ell));
  if (n < 2 || n <= ell) {
    throw GraphTooSmall("need more nodes than trees: N = " + std::to_string(n) +
                        ", ell = " + std::to_string(ell));
  }

  LabeledGraph graph;
  graph.ell = ell;
  graph.num_nodes = n;
  graph.edges.reserve(static_cast<std::size_t>(ell) * (n - 1));

  // Excluded-edge bitmap over the upper triangle, row-major by (i, j), i < j.
  std::vector<std::uint8_t> used(static_cast<std::size_t>(n) * n, 0);
  auto used_at = [n, &used](std::int32_t i, std::int32_t j) -> std::uint8_t& {
    return used[static_cast<std::size_t>(i) * n + j];
  };

  std::vector<std::uint8_t> in_tree(n);
  std::vector<Candidate> best(n);

  for (int tree = 0; tree < ell; ++tree) {
    std::fill(in_tree.begin(), in_tree.end(), 0);
    std::fill(best.begin(), best.end(), Candidate{});
    in_tree[0] = 1;
    for (std::int32_t v = 1; v < n; ++v) {
      if (!used_at(0, v)) best[v] = make_candidate(dist(0, v), 0, v);
    }
    for (std::int32_t step = 1; step < n; ++step) {
      std::int32_t pick = -1;
      for (std::int32_t v = 0; v < n; ++v) {
        if (in_tree[v] || !best[v].valid()) continue;
        if (pick < 0 || best[v] < best[pick]) pick = v;
      }
      if (pick < 0) {
        throw DisconnectedAfterExclusion(
            "tree " + std::to_string(tree + 1) +
            " cannot span the graph after excluding earlier trees");
      }
      const Candidate chosen = best[pick];
      graph.edges.emplace_back(chosen.i, chosen.j);
      used_at(chosen.i, chosen.j) = 1;
      in_tree[pick] = 1;
      for (std::int32_t v = 0; v < n; ++v) {
        if (in_tree[v]) continue;
        const std::int32_t a = pick < v ? pick : v;
        const std::int32_t b = pick < v ? v : pick;
        if (used_at(a, b)) continue;
        const Candidate cand = make_candidate(dist(pick, v), a, b);
        if (!best[v].valid() || cand < best[v]) best[v] = cand;
      }
    }
  }
  return graph;
}

void attach_labels(LabeledGraph& graph, std::int64_t n, std::int64_t m) {
  if (n + m != graph.num_nodes) {
    throw DimensionMismatch("labels for " + std::to_string(n + m) +
                            " nodes but graph has " +
                            std::to_string(graph.num_nodes));
  }
  graph.labels.assign(static_cast<std::size_t>(graph.num_nodes), 2);
  for (std::int64_t i = 0; i < n; ++i)
    graph.labels[static_cast<std::size_t>(i)] = 1;
}

double tree_length(const LabeledGraph& graph, const DistanceMatrix& dist,
                   int tree_index) {
  const std::size_t per_tree = static_cast<std::size_t>(graph.num_nodes) - 1;
  const std::size_t begin = per_tree * static_cast<std::size_t>(tree_index);
  double total = 0.0;
  for (std::size_t k = begin; k < begin + per_tree && k < graph.edges.size(); ++k) {
    total += dist(graph.edges[k].first, graph.edges[k].second);
  }
  return total;
}

}  // namespace hetero2st
