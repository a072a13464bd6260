#include "hetero2st/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hetero2st/errors.hpp"
#include "hetero2st/parallel.hpp"
#include "hetero2st/rng.hpp"

namespace hetero2st {

namespace {

double binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return r;
}

// Falling factorial n * (n-1) * ... * (n-k+1) as a double.
double falling(std::int64_t n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= static_cast<double>(n - i);
  return r;
}

void validate_sizes(const LabeledGraph& graph, std::int64_t n, std::int64_t m) {
  if (n < 1 || m < 1) throw SingleSample("need at least one node per sample");
  if (n + m != graph.num_nodes) {
    throw DimensionMismatch("n + m = " + std::to_string(n + m) +
                            " does not match node count " +
                            std::to_string(graph.num_nodes));
  }
}

// Visit every subset of size n of {0..N-1} as a label vector; f(labels).
template <typename F>
void for_each_assignment(std::int32_t num_nodes, std::int64_t n, F&& f) {
  std::vector<std::int32_t> pick(static_cast<std::size_t>(n));
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<std::uint8_t> labels(static_cast<std::size_t>(num_nodes));
  for (;;) {
    std::fill(labels.begin(), labels.end(), std::uint8_t{2});
    for (auto i : pick) labels[static_cast<std::size_t>(i)] = 1;
    f(labels);
    // next combination in lexicographic order
    std::int64_t k = n - 1;
    while (k >= 0 && pick[static_cast<std::size_t>(k)] ==
                         num_nodes - static_cast<std::int32_t>(n - k)) {
      --k;
    }
    if (k < 0) break;
    ++pick[static_cast<std::size_t>(k)];
    for (std::int64_t j = k + 1; j < n; ++j) {
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

// Uniform random assignment of n sample-1 labels via partial Fisher-Yates.
std::vector<std::uint8_t> random_labels(std::int32_t num_nodes, std::int64_t n,
                                        Rng& rng) {
  std::vector<std::int32_t> idx(static_cast<std::size_t>(num_nodes));
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::uint8_t> labels(static_cast<std::size_t>(num_nodes), 2);
  for (std::int64_t i = 0; i < n; ++i) {
    std::uniform_int_distribution<std::int64_t> pick(i, num_nodes - 1);
    std::swap(idx[static_cast<std::size_t>(i)],
              idx[static_cast<std::size_t>(pick(rng))]);
    labels[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = 1;
  }
  return labels;
}

PermutationMoments moments_exact(const LabeledGraph& graph, std::int64_t n,
                                 std::int64_t m) {
  const double combos = binomial(graph.num_nodes, n);
  if (combos > 1e6) {
    throw EnumerationTooLarge("C(" + std::to_string(graph.num_nodes) + ", " +
                              std::to_string(n) + ") exceeds 1e6 assignments");
  }
  double s1 = 0, s2 = 0, s11 = 0, s22 = 0, s12 = 0, count = 0;
  for_each_assignment(graph.num_nodes, n, [&](const std::vector<std::uint8_t>& lab) {
    const EdgeCounts c = count_edges(graph, lab);
    const auto r1 = static_cast<double>(c.r1);
    const auto r2 = static_cast<double>(c.r2);
    s1 += r1;
    s2 += r2;
    s11 += r1 * r1;
    s22 += r2 * r2;
    s12 += r1 * r2;
    count += 1;
  });
  PermutationMoments mom;
  mom.method = MomentMethod::exact_enumeration;
  mom.mu1 = s1 / count;
  mom.mu2 = s2 / count;
  mom.sigma(0, 0) = s11 / count - mom.mu1 * mom.mu1;
  mom.sigma(1, 1) = s22 / count - mom.mu2 * mom.mu2;
  mom.sigma(0, 1) = mom.sigma(1, 0) = s12 / count - mom.mu1 * mom.mu2;
  (void)m;
  return mom;
}

PermutationMoments moments_monte_carlo(const LabeledGraph& graph, std::int64_t n,
                                       std::int64_t m, std::int64_t draws,
                                       std::uint64_t seed) {
  if (draws < 100) {
    throw InsufficientDraws("Monte Carlo moments need >= 100 draws, got " +
                            std::to_string(draws));
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> counts(
      static_cast<std::size_t>(draws));
  parallel_for(static_cast<std::size_t>(draws), [&](std::size_t b) {
    Rng rng = make_rng(derive_seed(seed, b));
    const auto lab = random_labels(graph.num_nodes, n, rng);
    const EdgeCounts c = count_edges(graph, lab);
    counts[b] = {c.r1, c.r2};
  });
  // Integer accumulation keeps the reduction order-independent.
  std::int64_t s1 = 0, s2 = 0;
  std::int64_t s11 = 0, s22 = 0, s12 = 0;
  for (const auto& [r1, r2] : counts) {
    s1 += r1;
    s2 += r2;
    s11 += r1 * r1;
    s22 += r2 * r2;
    s12 += r1 * r2;
  }
  const auto dn = static_cast<double>(draws);
  PermutationMoments mom;
  mom.method = MomentMethod::monte_carlo;
  mom.draws = draws;
  mom.mu1 = static_cast<double>(s1) / dn;
  mom.mu2 = static_cast<double>(s2) / dn;
  mom.sigma(0, 0) = static_cast<double>(s11) / dn - mom.mu1 * mom.mu1;
  mom.sigma(1, 1) = static_cast<double>(s22) / dn - mom.mu2 * mom.mu2;
  mom.sigma(0, 1) = mom.sigma(1, 0) =
      static_cast<double>(s12) / dn - mom.mu1 * mom.mu2;
  (void)m;
  return mom;
}

PermutationMoments moments_closed_form(const LabeledGraph& graph, std::int64_t n,
                                       std::int64_t m) {
  const std::int64_t big_n = graph.num_nodes;
  const auto edges = static_cast<double>(graph.edge_count());

  std::vector<std::int64_t> degree(static_cast<std::size_t>(big_n), 0);
  for (const auto& [i, j] : graph.edges) {
    ++degree[static_cast<std::size_t>(i)];
    ++degree[static_cast<std::size_t>(j)];
  }
  double shared_pairs = 0;  // unordered pairs of distinct edges with a common node
  for (auto d : degree) shared_pairs += 0.5 * static_cast<double>(d) * (d - 1);
  const double ordered_shared = 2.0 * shared_pairs;
  const double ordered_disjoint = edges * (edges - 1.0) - ordered_shared;

  const double pool2 = falling(big_n, 2);
  const double p1 = falling(n, 2) / pool2;
  const double p2 = falling(m, 2) / pool2;

  PermutationMoments mom;
  mom.method = MomentMethod::closed_form;
  mom.mu1 = edges * p1;
  mom.mu2 = edges * p2;

  // Second moments from the three pair classes: identical edges, edges
  // sharing one node (3 distinct nodes), disjoint edges (4 distinct nodes).
  auto second_moment = [&](std::int64_t size) {
    double v = edges * falling(size, 2) / pool2;
    if (ordered_shared > 0) {
      v += ordered_shared * falling(size, 3) / falling(big_n, 3);
    }
    if (ordered_disjoint > 0) {
      v += ordered_disjoint * falling(size, 4) / falling(big_n, 4);
    }
    return v;
  };
  const double e11 = second_moment(n);
  const double e22 = second_moment(m);
  double e12 = 0.0;
  if (ordered_disjoint > 0) {
    e12 = ordered_disjoint * falling(n, 2) * falling(m, 2) / falling(big_n, 4);
  }
  mom.sigma(0, 0) = e11 - mom.mu1 * mom.mu1;
  mom.sigma(1, 1) = e22 - mom.mu2 * mom.mu2;
  mom.sigma(0, 1) = mom.sigma(1, 0) = e12 - mom.mu1 * mom.mu2;
  return mom;
}

double statistic_of(StatisticKind kind, const EdgeCounts& c, std::int64_t n,
                    std::int64_t m, const PermutationMoments* moments) {
  switch (kind) {
    case StatisticKind::ec:
      return static_cast<double>(c.r0);
    case StatisticKind::wec:
      return wec_statistic(c, n, m);
    case StatisticKind::gec:
      return gec_statistic(c, *moments);
  }
  throw InvalidSpec("unknown statistic kind");
}

}  // namespace

PermutationMoments permutation_moments(const LabeledGraph& graph, std::int64_t n,
                                       std::int64_t m, MomentMethod method,
                                       std::int64_t draws, std::uint64_t seed) {
  validate_sizes(graph, n, m);
  switch (method) {
    case MomentMethod::exact_enumeration:
      return moments_exact(graph, n, m);
    case MomentMethod::monte_carlo:
      return moments_monte_carlo(graph, n, m, draws, seed);
    case MomentMethod::closed_form:
      return moments_closed_form(graph, n, m);
  }
  throw InvalidSpec("unknown moment method");
}

std::map<StatisticKind, double> permutation_pvalues(
    const std::vector<StatisticKind>& kinds, const LabeledGraph& graph,
    std::int64_t n, std::int64_t m, const PermutationPValueOptions& opts) {
  validate_sizes(graph, n, m);
  const EdgeCounts observed_counts = count_edges(graph);

  const bool needs_gec =
      std::find(kinds.begin(), kinds.end(), StatisticKind::gec) != kinds.end();
  PermutationMoments moments;
  if (needs_gec) {
    moments = permutation_moments(graph, n, m, MomentMethod::closed_form);
  }

  std::map<StatisticKind, double> observed;
  for (auto kind : kinds) {
    observed[kind] = statistic_of(kind, observed_counts, n, m, &moments);
  }

  std::map<StatisticKind, std::int64_t> exceed;
  for (auto kind : kinds) exceed[kind] = 0;
  auto tally = [&](const EdgeCounts& c) {
    for (auto kind : kinds) {
      const double s = statistic_of(kind, c, n, m, &moments);
      if (kind == StatisticKind::ec) {
        // EC rejects for small R0: extreme means <= observed.
        if (s <= observed[kind]) ++exceed[kind];
      } else if (s >= observed[kind]) {
        ++exceed[kind];
      }
    }
  };

  std::map<StatisticKind, double> pvals;
  if (opts.exhaustive) {
    const double combos = binomial(graph.num_nodes, n);
    if (combos > 1e6) {
      throw EnumerationTooLarge("exhaustive p-value needs C(N, n) <= 1e6");
    }
    double total = 0;
    for_each_assignment(graph.num_nodes, n,
                        [&](const std::vector<std::uint8_t>& lab) {
                          tally(count_edges(graph, lab));
                          total += 1;
                        });
    for (auto kind : kinds) {
      pvals[kind] = static_cast<double>(exceed[kind]) / total;
    }
    return pvals;
  }

  if (opts.draws < 100) {
    throw InsufficientDraws("permutation p-value needs >= 100 draws, got " +
                            std::to_string(opts.draws));
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> counts(
      static_cast<std::size_t>(opts.draws));
  parallel_for(static_cast<std::size_t>(opts.draws), [&](std::size_t b) {
    Rng rng = make_rng(derive_seed(opts.seed, b));
    const auto lab = random_labels(graph.num_nodes, n, rng);
    const EdgeCounts c = count_edges(graph, lab);
    counts[b] = {c.r1, c.r2};
  });
  for (const auto& [r1, r2] : counts) {
    EdgeCounts c;
    c.r1 = r1;
    c.r2 = r2;
    c.total = graph.edge_count();
    c.r0 = c.total - r1 - r2;
    tally(c);
  }
  for (auto kind : kinds) {
    pvals[kind] = static_cast<double>(1 + exceed[kind]) /
                  static_cast<double>(1 + opts.draws);
  }
  return pvals;
}

double permutation_pvalue(StatisticKind kind, const LabeledGraph& graph,
                          std::int64_t n, std::int64_t m,
                          const PermutationPValueOptions& opts) {
  return permutation_pvalues({kind}, graph, n, m, opts).at(kind);
}

double ensemble_upper_cutoff(const std::vector<double>& stats, double alpha) {
  // Smallest s in the ensemble with #{r : stats[r] >= s} / B <= alpha;
  // +inf when the qualifying set is empty. Equivalent to scanning values in
  // increasing order with their suffix exceedance counts.
  if (stats.empty()) return std::numeric_limits<double>::infinity();
  std::vector<double> sorted(stats);
  std::sort(sorted.begin(), sorted.end());
  const auto b = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] == sorted[i - 1]) continue;
    const auto exceed = static_cast<double>(sorted.size() - i);
    if (exceed / b <= alpha) return sorted[i];
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace hetero2st
