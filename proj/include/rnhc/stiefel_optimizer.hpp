#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rnhc/cut_metrics.hpp"
#include "rnhc/hypergraph.hpp"
#include "rnhc/kmeans.hpp"
#include "rnhc/smoothed_objective.hpp"

namespace rnhc {

struct OptimizerConfig {
  double alpha = 100.0;
  int max_iters = 1000;
  // Stops when ||A X||_F <= epsilon * max(1, |f0|). The raw Euclidean
  // gradient cannot reach 1e-9 (its column sums equal m), so the projected
  // gradient is what the tolerance applies to.
  double epsilon = 1e-9;
  double backtrack_factor = 0.5;
  double armijo_c1 = 1e-4;
  int max_backtracks = 25;
  double initial_step = 1e-2;
  bool bb_step = true;  // Barzilai-Borwein trial step once history exists
  double stall_rel_tol = 1e-12;
  int stall_window = 10;  // 0 disables the stall stop
  double ortho_trigger = 1e-9;
  bool kmeans_row_normalize = false;  // normalize embedding rows before K-Means
  std::uint64_t rng_seed = 0;
  ExecPolicy policy = ExecPolicy::Serial;

  void validate() const;
};

enum class StopReason { GradientTolerance, MaxIterations, LineSearchFailure, ObjectiveStall };
const char* to_string(StopReason reason);

struct IterationRecord {
  int iter = 0;
  double f = 0.0;
  double tau = 0.0;
  double pg_norm = 0.0;  // ||A X||_F at the start of the iteration
  int backtracks = 0;
  double wall_ms = 0.0;
  double ortho_drift = 0.0;
};

struct OptimizerTrace {
  std::vector<IterationRecord> iterations;
  StopReason reason = StopReason::MaxIterations;
  double initial_f = 0.0;
  double max_ortho_drift = 0.0;
  int reorthonormalizations = 0;
};

// iter,f,tau,pg_norm,backtracks,ms
void write_trace_csv(const OptimizerTrace& trace, std::ostream& out);

// Column-orthonormal n x p start point; deterministic in the seed.
Eigen::MatrixXd random_orthonormal(int n, int p, std::uint64_t seed);

// A = G X^T - X G^T held in factored form U V^T with U = [G | X],
// V = [X | -G]. V^T U and V^T X are cached so every curve point after the
// first costs one 2p x 2p solve plus 4 n p^2 flops.
class SkewFactors {
 public:
  SkewFactors(Eigen::MatrixXd x, const Eigen::MatrixXd& g);

  const Eigen::MatrixXd& ax() const { return ax_; }  // A X, the descent direction
  double pg_norm() const { return ax_.norm(); }

  // Y(tau) = (I + tau/2 A)^{-1} (I - tau/2 A) X. Uses the 2p x 2p
  // Sherman-Morrison-Woodbury system when 2p < n/2, the dense n x n solve
  // otherwise. Empty result means the system is singular (tau too large).
  std::optional<Eigen::MatrixXd> try_point(double tau) const;
  Eigen::MatrixXd point(double tau) const;        // throws on a singular system
  Eigen::MatrixXd dense_point(double tau) const;  // explicit n x n route
  Eigen::MatrixXd smw_point(double tau) const;    // low-rank route

  const Eigen::MatrixXd& x() const { return x_; }

 private:
  std::optional<Eigen::MatrixXd> smw_point_impl(double tau) const;
  std::optional<Eigen::MatrixXd> dense_point_impl(double tau) const;

  Eigen::MatrixXd x_, u_, v_;
  Eigen::MatrixXd vtu_, vtx_;  // 2p x 2p, 2p x p
  Eigen::MatrixXd ax_;
};

struct LineSearchResult {
  bool success = false;
  double tau = 0.0;
  double f = 0.0;
  int backtracks = 0;
  Eigen::MatrixXd y;
};

// Armijo backtracking on f(Y(tau)) <= f0 - c1 tau ||A X||_F^2.
LineSearchResult line_search(const Hypergraph& h, const SkewFactors& factors, double f0,
                             double initial_tau, const OptimizerConfig& config);

struct OptimizeResult {
  Embedding embedding;
  OptimizerTrace trace;
};

OptimizeResult optimize(const Hypergraph& h, int p, const OptimizerConfig& config);

struct RnhcResult {
  Partition partition;
  CutReport report;
  OptimizerTrace trace;
  bool failed = false;  // K-Means could not produce p non-empty clusters
};

// Full pipeline: curvilinear descent, then K-Means on the embedding rows,
// then exact scoring of the discrete partition.
RnhcResult rnhc(const Hypergraph& h, int p, const OptimizerConfig& config,
                const KMeansConfig& kmeans_config);

}  // namespace rnhc
