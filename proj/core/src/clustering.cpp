#include "hetero2st/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hetero2st/errors.hpp"
#include "hetero2st/rng.hpp"

namespace hetero2st {

namespace {

// Index of the nearest centroid; ties go to the lowest index.
std::int32_t nearest_centroid(const Matrix& centroids,
                              const Eigen::RowVectorXd& p) {
  std::int32_t best = 0;
  double best_d = (centroids.row(0) - p).squaredNorm();
  for (Eigen::Index c = 1; c < centroids.rows(); ++c) {
    const double d = (centroids.row(c) - p).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<std::int32_t>(c);
    }
  }
  return best;
}

// k-means++ seeding over the given rows.
Matrix kmeanspp_init(const Matrix& pts, int k, Rng& rng) {
  const Eigen::Index n = pts.rows();
  Matrix centroids(k, pts.cols());
  std::uniform_int_distribution<Eigen::Index> uni(0, n - 1);
  centroids.row(0) = pts.row(uni(rng));
  Eigen::VectorXd dist2 =
      (pts.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = dist2.sum();
    Eigen::Index chosen;
    if (total <= 0.0) {
      chosen = uni(rng);  // all mass at the chosen centroids; degenerate data
    } else {
      std::uniform_real_distribution<double> u(0.0, total);
      double target = u(rng);
      chosen = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        target -= dist2(i);
        if (target <= 0.0) {
          chosen = i;
          break;
        }
      }
    }
    centroids.row(c) = pts.row(chosen);
    dist2 = dist2.cwiseMin(
        (pts.rowwise() - centroids.row(c)).rowwise().squaredNorm());
  }
  return centroids;
}

struct KmeansResult {
  std::vector<std::int32_t> assignments;
  std::vector<std::int64_t> sizes;
  Matrix centroids;
  bool has_empty_cluster = false;
};

KmeansResult lloyd(const Matrix& pts, int k, std::uint64_t seed, int max_iter) {
  Rng rng = make_rng(seed);
  const Eigen::Index n = pts.rows();
  KmeansResult res;
  res.centroids = kmeanspp_init(pts, k, rng);
  res.assignments.assign(static_cast<std::size_t>(n), -1);
  res.sizes.assign(static_cast<std::size_t>(k), 0);
  for (int iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    std::fill(res.sizes.begin(), res.sizes.end(), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const std::int32_t c = nearest_centroid(res.centroids, pts.row(i));
      if (c != res.assignments[static_cast<std::size_t>(i)]) {
        res.assignments[static_cast<std::size_t>(i)] = c;
        changed = true;
      }
      ++res.sizes[static_cast<std::size_t>(c)];
    }
    if (std::any_of(res.sizes.begin(), res.sizes.end(),
                    [](std::int64_t s) { return s == 0; })) {
      res.has_empty_cluster = true;
      return res;
    }
    if (!changed && iter > 0) break;
    Matrix sums = Matrix::Zero(k, pts.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(res.assignments[static_cast<std::size_t>(i)]) += pts.row(i);
    }
    for (int c = 0; c < k; ++c) {
      res.centroids.row(c) =
          sums.row(c) / static_cast<double>(res.sizes[static_cast<std::size_t>(c)]);
    }
  }
  return res;
}

// k-means with empty-cluster restarts; nullopt-like flag when unrecoverable.
KmeansResult kmeans_with_restarts(const Matrix& pts, int k, std::uint64_t seed,
                                  int max_iter) {
  KmeansResult res;
  for (int restart = 0; restart < 10; ++restart) {
    res = lloyd(pts, k, derive_seed(seed, static_cast<std::uint64_t>(restart)),
                max_iter);
    if (!res.has_empty_cluster) return res;
  }
  return res;  // has_empty_cluster still set
}

}  // namespace

ClusterModel cluster_baseline(const PointCloud& x, int k_hat, std::uint64_t seed,
                              int max_iter) {
  if (k_hat < 1) throw InvalidSpec("k_hat must be >= 1");
  if (x.rows() < k_hat) {
    throw TooFewPoints("cannot form " + std::to_string(k_hat) +
                       " clusters from " + std::to_string(x.rows()) + " rows");
  }
  ClusterModel model;
  model.k_hat = k_hat;
  if (k_hat == 1) {
    model.assignments.assign(static_cast<std::size_t>(x.rows()), 0);
    model.class_sizes = {x.rows()};
    model.centroids = x.points().colwise().mean();
    return model;
  }
  const KmeansResult res = kmeans_with_restarts(x.points(), k_hat, seed, max_iter);
  if (res.has_empty_cluster) {
    throw EmptyClusterUnrecoverable(
        "k-means left an empty cluster after 10 restarts (k_hat = " +
        std::to_string(k_hat) + ")");
  }
  model.assignments = res.assignments;
  model.class_sizes = res.sizes;
  model.centroids = res.centroids;
  return model;
}

double prediction_strength(const PointCloud& x, int k, std::uint64_t seed) {
  if (k <= 1) return 1.0;
  const Eigen::Index n = x.rows();
  if (n < 2 * k) return 0.0;

  // Random half split.
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng = make_rng(derive_seed(seed, 0));
  std::shuffle(idx.begin(), idx.end(), rng);
  const Eigen::Index half = n / 2;
  Matrix train(half, x.dim()), test(n - half, x.dim());
  for (Eigen::Index i = 0; i < half; ++i)
    train.row(i) = x.row(idx[static_cast<std::size_t>(i)]);
  for (Eigen::Index i = half; i < n; ++i)
    test.row(i - half) = x.row(idx[static_cast<std::size_t>(i)]);

  const KmeansResult train_fit =
      kmeans_with_restarts(train, k, derive_seed(seed, 1), 100);
  const KmeansResult test_fit =
      kmeans_with_restarts(test, k, derive_seed(seed, 2), 100);
  if (train_fit.has_empty_cluster || test_fit.has_empty_cluster) return 0.0;

  // Classify test rows by the training centroids.
  std::vector<std::int32_t> by_train(static_cast<std::size_t>(test.rows()));
  for (Eigen::Index i = 0; i < test.rows(); ++i) {
    by_train[static_cast<std::size_t>(i)] =
        nearest_centroid(train_fit.centroids, test.row(i));
  }

  // Minimum over test clusters of the co-assignment fraction of its pairs.
  double ps = std::numeric_limits<double>::infinity();
  bool any_scored = false;
  for (int c = 0; c < k; ++c) {
    std::vector<Eigen::Index> members;
    for (Eigen::Index i = 0; i < test.rows(); ++i) {
      if (test_fit.assignments[static_cast<std::size_t>(i)] == c)
        members.push_back(i);
    }
    if (members.size() < 2) continue;  // no pairs to score
    std::int64_t agree = 0;
    const auto s = static_cast<std::int64_t>(members.size());
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        if (by_train[static_cast<std::size_t>(members[a])] ==
            by_train[static_cast<std::size_t>(members[b])])
          ++agree;
      }
    }
    ps = std::min(ps, static_cast<double>(agree) /
                          (0.5 * static_cast<double>(s) *
                           static_cast<double>(s - 1)));
    any_scored = true;
  }
  return any_scored ? ps : 0.0;
}

int estimate_num_clusters(const PointCloud& x, int kmax, double ps_threshold,
                          std::uint64_t seed) {
  if (kmax < 1) throw InvalidSpec("kmax must be >= 1");
  if (x.rows() < 2 * static_cast<Eigen::Index>(kmax)) {
    throw TooFewPoints("prediction strength needs n >= 2*kmax; n = " +
                       std::to_string(x.rows()) + ", kmax = " +
                       std::to_string(kmax));
  }
  int best = 1;  // ps(1) == 1 by convention
  for (int k = 2; k <= kmax; ++k) {
    if (prediction_strength(x, k, derive_seed(seed, static_cast<std::uint64_t>(k))) >=
        ps_threshold) {
      best = k;
    }
  }
  return best;
}

}  // namespace hetero2st
