#include "hetero2st/edge_counts.hpp"

#include <cmath>
#include <string>

#include "hetero2st/errors.hpp"

namespace hetero2st {

EdgeCounts count_edges(const LabeledGraph& graph) {
  return count_edges(graph, graph.labels);
}

EdgeCounts count_edges(const LabeledGraph& graph,
                       const std::vector<std::uint8_t>& labels) {
  if (labels.size() != static_cast<std::size_t>(graph.num_nodes)) {
    throw DimensionMismatch("label vector size " + std::to_string(labels.size()) +
                            " does not match node count " +
                            std::to_string(graph.num_nodes));
  }
  bool saw1 = false, saw2 = false;
  for (auto l : labels) {
    if (l == 1) saw1 = true;
    else if (l == 2) saw2 = true;
    else throw InvalidSpec("labels must be 1 or 2");
  }
  if (!saw1 || !saw2) {
    throw SingleSample("all nodes carry the same sample label");
  }
  EdgeCounts c;
  c.total = graph.edge_count();
  for (const auto& [i, j] : graph.edges) {
    const int s = labels[static_cast<std::size_t>(i)] +
                  labels[static_cast<std::size_t>(j)];
    if (s == 2) ++c.r1;        // 1 + 1
    else if (s == 4) ++c.r2;   // 2 + 2
    else ++c.r0;
  }
  return c;
}

double wec_statistic(const EdgeCounts& counts, std::int64_t n, std::int64_t m) {
  if (n < 1 || m < 1) throw InvalidSpec("both sample sizes must be >= 1");
  const std::int64_t total_n = n + m;
  const double numerator =
      static_cast<double>(m * counts.r1 + n * counts.r2);  // exact in int64
  return numerator / (static_cast<double>(total_n) * static_cast<double>(total_n));
}

double gec_statistic(const EdgeCounts& counts, const PermutationMoments& moments,
                     double condition_bound) {
  const Eigen::Matrix2d& s = moments.sigma;
  // Condition number of the symmetric 2x2 from its eigenvalues.
  const double tr = s(0, 0) + s(1, 1);
  const double det = s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  const double lo = tr / 2.0 - disc;
  const double hi = tr / 2.0 + disc;
  if (!(lo > 0.0) || hi / lo > condition_bound) {
    throw SingularCovariance(
        "permutation covariance is numerically singular; the graph/label "
        "configuration is degenerate");
  }
  Eigen::Vector2d centered(static_cast<double>(counts.r1) - moments.mu1,
                           static_cast<double>(counts.r2) - moments.mu2);
  return centered.dot(s.inverse() * centered);
}

}  // namespace hetero2st
