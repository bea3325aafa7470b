#include "rnhc/kmeans.hpp"

#include <limits>
#include <random>
#include <stdexcept>

namespace rnhc {

namespace {

Eigen::MatrixXd seed_plus_plus(const Eigen::MatrixXd& points, int k, std::mt19937_64& rng) {
  const int n = static_cast<int>(points.rows());
  Eigen::MatrixXd centroids(k, points.cols());
  std::vector<char> chosen(n, 0);

  std::uniform_int_distribution<int> first(0, n - 1);
  int idx = first(rng);
  centroids.row(0) = points.row(idx);
  chosen[idx] = 1;

  Eigen::VectorXd dist2 = (points.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  for (int j = 1; j < k; ++j) {
    const double total = dist2.sum();
    int next = -1;
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      double target = u(rng);
      for (int i = 0; i < n; ++i) {
        target -= dist2[i];
        if (target <= 0.0) {
          next = i;
          break;
        }
      }
      if (next < 0) next = n - 1;
    }
    if (next < 0 || chosen[next]) {
      // All remaining mass is on duplicates; take the first unchosen point.
      next = -1;
      for (int i = 0; i < n; ++i)
        if (!chosen[i]) {
          next = i;
          break;
        }
      if (next < 0) next = 0;
    }
    centroids.row(j) = points.row(next);
    chosen[next] = 1;
    dist2 = dist2.cwiseMin((points.rowwise() - centroids.row(j)).rowwise().squaredNorm());
  }
  return centroids;
}

void assign_labels(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
                   std::vector<int>& labels, ExecPolicy policy) {
  const int n = static_cast<int>(points.rows());
  const int k = static_cast<int>(centroids.rows());

  const auto nearest = [&](int i) {
    int best = 0;
    double best_d = (points.row(i) - centroids.row(0)).squaredNorm();
    for (int c = 1; c < k; ++c) {
      const double d = (points.row(i) - centroids.row(c)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    return best;
  };

  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel
    {
      threading::note_parallel_region();
#pragma omp for schedule(static)
      for (int i = 0; i < n; ++i) labels[i] = nearest(i);
    }
  } else {
    for (int i = 0; i < n; ++i) labels[i] = nearest(i);
  }
}

struct RestartOutcome {
  std::vector<int> labels;
  double inertia = std::numeric_limits<double>::infinity();
  bool failed = false;
};

RestartOutcome run_restart(const Eigen::MatrixXd& points, const KMeansConfig& config,
                           std::uint64_t seed) {
  const int n = static_cast<int>(points.rows());
  const int k = config.k;
  std::mt19937_64 rng(seed);

  Eigen::MatrixXd centroids = seed_plus_plus(points, k, rng);
  RestartOutcome out;
  out.labels.assign(n, 0);

  std::vector<std::int64_t> counts(k, 0);
  int repairs_used = 0;

  for (int iter = 0; iter < config.max_iters; ++iter) {
    assign_labels(points, centroids, out.labels, config.policy);

    std::fill(counts.begin(), counts.end(), 0);
    for (int label : out.labels) ++counts[label];

    // Repair: hand each empty cluster the point farthest from its centroid,
    // taken from a cluster that can spare one.
    bool any_empty = true;
    while (any_empty) {
      any_empty = false;
      for (int c = 0; c < k; ++c) {
        if (counts[c] > 0) continue;
        if (repairs_used >= config.max_empty_repairs) {
          out.failed = true;
          return out;
        }
        ++repairs_used;
        int farthest = -1;
        double far_d = -1.0;
        for (int i = 0; i < n; ++i) {
          if (counts[out.labels[i]] < 2) continue;
          const double d = (points.row(i) - centroids.row(out.labels[i])).squaredNorm();
          if (d > far_d) {
            far_d = d;
            farthest = i;
          }
        }
        if (farthest < 0) {
          out.failed = true;
          return out;
        }
        --counts[out.labels[farthest]];
        out.labels[farthest] = c;
        counts[c] = 1;
        centroids.row(c) = points.row(farthest);
        any_empty = true;
      }
    }

    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(k, points.cols());
    for (int i = 0; i < n; ++i) next.row(out.labels[i]) += points.row(i);
    for (int c = 0; c < k; ++c) next.row(c) /= static_cast<double>(counts[c]);

    const double moved = (next - centroids).rowwise().norm().maxCoeff();
    centroids = std::move(next);
    if (moved <= config.tol) break;
  }

  assign_labels(points, centroids, out.labels, config.policy);
  std::fill(counts.begin(), counts.end(), 0);
  for (int label : out.labels) ++counts[label];
  for (int c = 0; c < k; ++c)
    if (counts[c] == 0) {
      out.failed = true;
      return out;
    }

  double inertia = 0.0;
  for (int i = 0; i < n; ++i)
    inertia += (points.row(i) - centroids.row(out.labels[i])).squaredNorm();
  out.inertia = inertia;
  return out;
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& points, const KMeansConfig& config) {
  const int n = static_cast<int>(points.rows());
  if (config.k < 1) throw std::invalid_argument("k must be >= 1");
  if (config.k > n) throw std::invalid_argument("k exceeds the number of points");
  if (config.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (!points.allFinite()) throw std::invalid_argument("points contain non-finite values");

  KMeansResult best;
  best.failed = true;
  best.inertia = std::numeric_limits<double>::infinity();

  for (int r = 0; r < config.restarts; ++r) {
    RestartOutcome outcome = run_restart(points, config, config.rng_seed + r);
    if (outcome.failed) {
      if (best.best_restart < 0) best.labels = outcome.labels;  // diagnostics only
      continue;
    }
    if (best.failed || outcome.inertia < best.inertia) {
      best.labels = std::move(outcome.labels);
      best.inertia = outcome.inertia;
      best.failed = false;
      best.best_restart = r;
    }
  }
  return best;
}

}  // namespace rnhc
