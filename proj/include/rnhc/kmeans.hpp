#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "rnhc/parallel.hpp"

namespace rnhc {

struct KMeansConfig {
  int k = 2;
  int max_iters = 100;
  int restarts = 10;
  std::uint64_t rng_seed = 0;
  double tol = 1e-7;          // max centroid movement per Lloyd step
  int max_empty_repairs = 3;  // repair rounds per restart before giving up
  ExecPolicy policy = ExecPolicy::Serial;
};

struct KMeansResult {
  std::vector<int> labels;
  double inertia = 0.0;
  bool failed = false;  // no restart produced k non-empty clusters
  int best_restart = -1;
};

// Lloyd iterations with k-means++ seeding on the rows of `points`.
// Restart r uses sub-seed rng_seed + r; the winner is chosen by
// (inertia, restart index). An empty cluster is repaired by moving in the
// point farthest from its current centroid.
KMeansResult kmeans(const Eigen::MatrixXd& points, const KMeansConfig& config);

}  // namespace rnhc
