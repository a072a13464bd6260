#include "hetero2st/bootstrap.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "hetero2st/distance.hpp"
#include "hetero2st/errors.hpp"
#include "hetero2st/parallel.hpp"
#include "hetero2st/rng.hpp"

namespace hetero2st {

namespace {

// Seed streams of one bootstrap run.
enum : std::uint64_t {
  stream_ps = 1,
  stream_kmeans = 2,
  stream_weights = 3,
  stream_split = 4,
};

// ceil(m * lambda) robust to representation noise in lambda.
std::int64_t quota(std::int64_t m, double lambda) {
  const double v = static_cast<double>(m) * lambda;
  return static_cast<std::int64_t>(std::ceil(v - 1e-9));
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

std::string to_string(TestKind kind) {
  switch (kind) {
    case TestKind::ec: return "ec";
    case TestKind::gec: return "gec";
    case TestKind::wec: return "wec";
    case TestKind::bgec: return "bgec";
    case TestKind::bwec: return "bwec";
  }
  return "?";
}

TestKind test_kind_from_string(const std::string& name) {
  if (name == "ec") return TestKind::ec;
  if (name == "gec") return TestKind::gec;
  if (name == "wec") return TestKind::wec;
  if (name == "bgec") return TestKind::bgec;
  if (name == "bwec") return TestKind::bwec;
  throw InvalidSpec("unknown test kind '" + name +
                    "' (expected ec, gec, wec, bgec or bwec)");
}

void BootstrapConfig::validate() const {
  if (b_rounds < 50) {
    throw InvalidSpec("b_rounds must be >= 50, got " + std::to_string(b_rounds));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidSpec("alpha must lie in (0, 1)");
  }
  if (ell < 1) throw InvalidSpec("ell must be >= 1");
}

MixingWeights sample_mixing_weights(int k_hat, WeightMode mode,
                                    std::int64_t round_index, std::uint64_t seed) {
  if (k_hat < 1) throw InvalidSpec("k_hat must be >= 1");
  if (round_index < 1) throw InvalidSpec("round_index is 1-based");
  MixingWeights w;
  w.mode = mode;
  w.lambdas.assign(static_cast<std::size_t>(k_hat), 0.0);
  if (mode == WeightMode::corner) {
    w.lambdas[static_cast<std::size_t>((round_index - 1) % k_hat)] = 1.0;
    return w;
  }
  // Flat Dirichlet via normalized Exp(1) draws.
  Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(round_index)));
  std::exponential_distribution<double> exp1(1.0);
  double total = 0.0;
  for (auto& l : w.lambdas) {
    l = exp1(rng);
    total += l;
  }
  for (auto& l : w.lambdas) l /= total;
  return w;
}

std::optional<SurrogateSplit> bootstrap_surrogate_split(
    const ClusterModel& model, const PointCloud& x, const MixingWeights& weights,
    std::int64_t m, std::uint64_t seed) {
  if (m < 1) throw InvalidSpec("surrogate sample size m must be >= 1");
  if (static_cast<std::size_t>(x.rows()) != model.assignments.size()) {
    throw DimensionMismatch("cluster model does not match the point cloud");
  }
  if (weights.lambdas.size() != static_cast<std::size_t>(model.k_hat)) {
    throw DimensionMismatch("weights dimension does not match k_hat");
  }
  // Feasibility of every class first, so infeasible rounds draw nothing.
  std::vector<std::int64_t> need(weights.lambdas.size());
  for (std::size_t a = 0; a < weights.lambdas.size(); ++a) {
    need[a] = quota(m, weights.lambdas[a]);
    if (need[a] > model.class_sizes[a]) return std::nullopt;
  }

  std::vector<std::vector<std::int32_t>> class_rows(weights.lambdas.size());
  for (std::size_t i = 0; i < model.assignments.size(); ++i) {
    class_rows[static_cast<std::size_t>(model.assignments[i])].push_back(
        static_cast<std::int32_t>(i));
  }

  Rng rng = make_rng(seed);
  SurrogateSplit split;
  for (std::size_t a = 0; a < class_rows.size(); ++a) {
    auto& rows = class_rows[a];
    const auto take = static_cast<std::size_t>(need[a]);
    for (std::size_t i = 0; i < take; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, rows.size() - 1);
      std::swap(rows[i], rows[pick(rng)]);
    }
    split.surrogate_rows.insert(split.surrogate_rows.end(), rows.begin(),
                                rows.begin() + static_cast<std::ptrdiff_t>(take));
    split.residual_rows.insert(split.residual_rows.end(),
                               rows.begin() + static_cast<std::ptrdiff_t>(take),
                               rows.end());
  }
  std::sort(split.surrogate_rows.begin(), split.surrogate_rows.end());
  std::sort(split.residual_rows.begin(), split.residual_rows.end());
  return split;
}

BootstrapEnsemble bootstrap_ensemble(const PointCloud& x, std::int64_t m,
                                     const BootstrapConfig& cfg) {
  cfg.validate();
  const std::int64_t n = x.rows();
  if (m >= n) {
    throw InvalidSpec("bootstrap calibration requires m < n (m = " +
                      std::to_string(m) + ", n = " + std::to_string(n) + ")");
  }

  BootstrapEnsemble ens;
  ens.baseline_n = n;
  ens.k_hat = estimate_num_clusters(x, cfg.kmax, cfg.ps_threshold,
                                    derive_seed(cfg.seed, stream_ps));
  const ClusterModel model = cluster_baseline(
      x, ens.k_hat, derive_seed(cfg.seed, stream_kmeans), cfg.kmeans_max_iter);

  // Surrogate Y and residual X partition the baseline rows, so every round's
  // pooled sample is the baseline point set itself: build its l-MST once and
  // relabel per round.
  const DistanceMatrix dist = pairwise_distances(x);
  ens.graph = build_lmst(dist, cfg.ell);

  // Infeasible rounds are redrawn; an attempt's feasibility depends only on
  // its round index (weights) and the class sizes, so the accepted attempts
  // can be listed up front and the rounds then run independently.
  const std::int64_t max_attempts = 20LL * cfg.b_rounds;
  std::vector<std::int64_t> accepted;
  accepted.reserve(static_cast<std::size_t>(cfg.b_rounds));
  const std::uint64_t weight_seed = derive_seed(cfg.seed, stream_weights);
  std::int64_t attempt = 0;
  while (attempt < max_attempts &&
         accepted.size() < static_cast<std::size_t>(cfg.b_rounds)) {
    ++attempt;
    const MixingWeights w =
        sample_mixing_weights(ens.k_hat, cfg.weight_mode, attempt, weight_seed);
    bool ok = true;
    for (std::size_t a = 0; a < w.lambdas.size(); ++a) {
      if (quota(m, w.lambdas[a]) > model.class_sizes[a]) {
        ok = false;
        break;
      }
    }
    if (ok) accepted.push_back(attempt);
  }
  ens.attempts = attempt;
  if (accepted.size() < static_cast<std::size_t>(cfg.b_rounds)) {
    throw TooManyInfeasibleRounds(
        "collected " + std::to_string(accepted.size()) + " feasible rounds in " +
        std::to_string(attempt) +
        " attempts; m is too large relative to the smallest cluster");
  }

  ens.round_counts.resize(accepted.size());
  ens.round_m.resize(accepted.size());
  parallel_for(accepted.size(), [&](std::size_t b) {
    const std::int64_t t = accepted[b];
    const MixingWeights w =
        sample_mixing_weights(ens.k_hat, cfg.weight_mode, t, weight_seed);
    const auto split = bootstrap_surrogate_split(
        model, x, w, m,
        derive_seed(cfg.seed, stream_split, static_cast<std::uint64_t>(t)));
    std::vector<std::uint8_t> labels(static_cast<std::size_t>(n), 1);
    for (auto r : split->surrogate_rows) labels[static_cast<std::size_t>(r)] = 2;
    ens.round_counts[b] = count_edges(ens.graph, labels);
    ens.round_m[b] = static_cast<std::int64_t>(split->surrogate_rows.size());
  });
  return ens;
}

std::vector<double> ensemble_statistics(const BootstrapEnsemble& ensemble,
                                        StatisticKind kind) {
  if (kind == StatisticKind::ec) {
    throw InvalidSpec("the bootstrap calibrates gec and wec statistics only");
  }
  std::vector<double> stats(ensemble.round_counts.size());
  for (std::size_t b = 0; b < stats.size(); ++b) {
    const std::int64_t mb = ensemble.round_m[b];
    const std::int64_t nb = ensemble.baseline_n - mb;
    if (kind == StatisticKind::wec) {
      stats[b] = wec_statistic(ensemble.round_counts[b], nb, mb);
    } else {
      const PermutationMoments mom =
          permutation_moments(ensemble.graph, nb, mb, MomentMethod::closed_form);
      stats[b] = gec_statistic(ensemble.round_counts[b], mom);
    }
  }
  return stats;
}

BootstrapCutoffResult bootstrap_cutoff(const PointCloud& x, std::int64_t m,
                                       StatisticKind kind,
                                       const BootstrapConfig& cfg) {
  const BootstrapEnsemble ens = bootstrap_ensemble(x, m, cfg);
  BootstrapCutoffResult res;
  res.stats = ensemble_statistics(ens, kind);
  res.cutoff = ensemble_upper_cutoff(res.stats, cfg.alpha);
  res.k_hat = ens.k_hat;
  res.attempts = ens.attempts;
  return res;
}

namespace {

StatisticKind base_statistic(TestKind kind) {
  switch (kind) {
    case TestKind::ec: return StatisticKind::ec;
    case TestKind::gec:
    case TestKind::bgec: return StatisticKind::gec;
    case TestKind::wec:
    case TestKind::bwec: return StatisticKind::wec;
  }
  throw InvalidSpec("unknown test kind");
}

bool is_bootstrap(TestKind kind) {
  return kind == TestKind::bgec || kind == TestKind::bwec;
}

}  // namespace

std::vector<TestReport> heterogeneous_test_all(const PointCloud& x,
                                               const PointCloud& y,
                                               const std::vector<TestKind>& kinds,
                                               const BootstrapConfig& cfg,
                                               std::int64_t permutation_draws) {
  cfg.validate();
  if (x.dim() != y.dim()) {
    throw DimensionMismatch("x has dimension " + std::to_string(x.dim()) +
                            " but y has " + std::to_string(y.dim()));
  }
  if (kinds.empty()) throw EmptySelection("no test kinds requested");
  const std::int64_t n = x.rows();
  const std::int64_t m = y.rows();

  std::vector<std::string> warnings;
  if (n <= m) {
    warnings.push_back(
        "baseline sample is not larger than the test sample (n <= m); the "
        "calibration explores the larger sample and assumes n > m");
  }

  const auto t0 = std::chrono::steady_clock::now();
  const DistanceMatrix pooled = pairwise_distances(x, y);
  LabeledGraph graph = build_lmst(pooled, cfg.ell);
  attach_labels(graph, n, m);
  const EdgeCounts observed_counts = count_edges(graph);
  const double setup_ms = elapsed_ms(t0);

  std::vector<TestKind> boot_kinds, perm_kinds;
  for (auto k : kinds) (is_bootstrap(k) ? boot_kinds : perm_kinds).push_back(k);

  // Bootstrap ensemble shared by bgec/bwec.
  std::vector<TestReport> reports;
  std::optional<BootstrapEnsemble> ens;
  double boot_ms = 0.0;
  if (!boot_kinds.empty()) {
    const auto tb = std::chrono::steady_clock::now();
    ens = bootstrap_ensemble(x, m, cfg);
    boot_ms = elapsed_ms(tb);
  }

  // Permutation draws shared by ec/gec/wec.
  std::map<StatisticKind, double> perm_pvals;
  double perm_ms = 0.0;
  if (!perm_kinds.empty()) {
    const auto tp = std::chrono::steady_clock::now();
    std::vector<StatisticKind> stats;
    for (auto k : perm_kinds) stats.push_back(base_statistic(k));
    PermutationPValueOptions opts;
    opts.draws = permutation_draws;
    opts.seed = derive_seed(cfg.seed, 101);
    perm_pvals = permutation_pvalues(stats, graph, n, m, opts);
    perm_ms = elapsed_ms(tp);
  }

  PermutationMoments observed_moments;
  bool have_moments = false;
  for (auto kind : kinds) {
    TestReport rep;
    rep.kind = kind;
    rep.alpha = cfg.alpha;
    rep.ell = cfg.ell;
    rep.n = n;
    rep.m = m;
    rep.d = x.dim();
    rep.seed = cfg.seed;
    rep.warnings = warnings;
    const StatisticKind stat = base_statistic(kind);
    if (stat == StatisticKind::gec && !have_moments) {
      observed_moments = permutation_moments(graph, n, m, MomentMethod::closed_form);
      have_moments = true;
    }
    switch (stat) {
      case StatisticKind::ec:
        rep.observed = static_cast<double>(observed_counts.r0);
        break;
      case StatisticKind::gec:
        rep.observed = gec_statistic(observed_counts, observed_moments);
        break;
      case StatisticKind::wec:
        rep.observed = wec_statistic(observed_counts, n, m);
        break;
    }
    if (is_bootstrap(kind)) {
      rep.calibration = "bootstrap";
      const auto stats = ensemble_statistics(*ens, stat);
      rep.cutoff = ensemble_upper_cutoff(stats, cfg.alpha);
      std::int64_t exceed = 0;
      for (double s : stats) {
        if (s >= rep.observed) ++exceed;
      }
      rep.p_value = static_cast<double>(1 + exceed) /
                    static_cast<double>(1 + stats.size());
      rep.reject = rep.observed > rep.cutoff;
      rep.rounds = cfg.b_rounds;
      rep.k_hat = ens->k_hat;
      rep.feasible_rounds = static_cast<std::int64_t>(stats.size());
      rep.attempted_rounds = ens->attempts;
      rep.wall_ms = setup_ms / static_cast<double>(kinds.size()) +
                    boot_ms / static_cast<double>(boot_kinds.size());
    } else {
      rep.calibration = "permutation";
      rep.cutoff = std::numeric_limits<double>::quiet_NaN();
      rep.p_value = perm_pvals.at(stat);
      rep.reject = rep.p_value <= cfg.alpha;
      rep.rounds = permutation_draws;
      rep.k_hat = 0;
      rep.feasible_rounds = permutation_draws;
      rep.attempted_rounds = permutation_draws;
      rep.wall_ms = setup_ms / static_cast<double>(kinds.size()) +
                    perm_ms / static_cast<double>(perm_kinds.size());
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

TestReport heterogeneous_test(const PointCloud& x, const PointCloud& y,
                              TestKind kind, const BootstrapConfig& cfg) {
  if (!is_bootstrap(kind)) {
    throw InvalidSpec("heterogeneous_test runs bgec or bwec; use "
                      "permutation_pvalue for the simple-null tests");
  }
  return heterogeneous_test_all(x, y, {kind}, cfg).front();
}

}  // namespace hetero2st
