#include "rnhc/stiefel_optimizer.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

#include "rnhc/errors.hpp"

namespace rnhc {

void OptimizerConfig::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
    throw std::invalid_argument("backtrack_factor must be in (0, 1)");
  if (!(armijo_c1 > 0.0 && armijo_c1 < 0.5))
    throw std::invalid_argument("armijo_c1 must be in (0, 0.5)");
  if (max_backtracks < 0) throw std::invalid_argument("max_backtracks must be >= 0");
  if (!(initial_step > 0.0)) throw std::invalid_argument("initial_step must be positive");
  if (stall_window < 0) throw std::invalid_argument("stall_window must be >= 0");
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::GradientTolerance: return "gradient_tolerance";
    case StopReason::MaxIterations: return "max_iterations";
    case StopReason::LineSearchFailure: return "line_search_failure";
    case StopReason::ObjectiveStall: return "objective_stall";
  }
  return "unknown";
}

void write_trace_csv(const OptimizerTrace& trace, std::ostream& out) {
  out << "iter,f,tau,pg_norm,backtracks,ms\n";
  out.precision(17);
  for (const auto& r : trace.iterations)
    out << r.iter << ',' << r.f << ',' << r.tau << ',' << r.pg_norm << ',' << r.backtracks << ','
        << r.wall_ms << '\n';
}

Eigen::MatrixXd random_orthonormal(int n, int p, std::uint64_t seed) {
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  if (p > n) throw std::invalid_argument("p exceeds the number of rows");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd gauss(n, p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i) gauss(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gauss);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
  // Fix the sign ambiguity so the result is a deterministic function of seed.
  for (int j = 0; j < p; ++j)
    if (qr.matrixQR()(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

SkewFactors::SkewFactors(Eigen::MatrixXd x, const Eigen::MatrixXd& g) : x_(std::move(x)) {
  const auto n = x_.rows();
  const auto p = x_.cols();
  if (g.rows() != n || g.cols() != p)
    throw std::invalid_argument("gradient shape does not match the embedding");
  u_.resize(n, 2 * p);
  u_.leftCols(p) = g;
  u_.rightCols(p) = x_;
  v_.resize(n, 2 * p);
  v_.leftCols(p) = x_;
  v_.rightCols(p) = -g;
  vtu_.noalias() = v_.transpose() * u_;
  vtx_.noalias() = v_.transpose() * x_;
  ax_.noalias() = u_ * vtx_;
}

std::optional<Eigen::MatrixXd> SkewFactors::smw_point_impl(double tau) const {
  const auto q = vtu_.rows();
  Eigen::MatrixXd k = Eigen::MatrixXd::Identity(q, q) + (tau / 2.0) * vtu_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(k);
  if (lu.rcond() < 1e-14) return std::nullopt;
  Eigen::MatrixXd w = lu.solve(vtx_);
  Eigen::MatrixXd y = x_;
  y.noalias() -= tau * (u_ * w);
  if (!y.allFinite()) return std::nullopt;
  return y;
}

std::optional<Eigen::MatrixXd> SkewFactors::dense_point_impl(double tau) const {
  const auto n = x_.rows();
  Eigen::MatrixXd a = u_ * v_.transpose();
  Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n, n) + (tau / 2.0) * a;
  Eigen::MatrixXd rhs = x_ - (tau / 2.0) * (a * x_);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(lhs);
  if (lu.rcond() < 1e-14) return std::nullopt;
  Eigen::MatrixXd y = lu.solve(rhs);
  if (!y.allFinite()) return std::nullopt;
  return y;
}

std::optional<Eigen::MatrixXd> SkewFactors::try_point(double tau) const {
  const auto n = x_.rows();
  const auto two_p = u_.cols();
  if (two_p < n / 2) return smw_point_impl(tau);
  return dense_point_impl(tau);
}

Eigen::MatrixXd SkewFactors::point(double tau) const {
  auto y = try_point(tau);
  if (!y) throw std::runtime_error("Cayley system is singular at tau=" + std::to_string(tau));
  return *std::move(y);
}

Eigen::MatrixXd SkewFactors::dense_point(double tau) const {
  auto y = dense_point_impl(tau);
  if (!y) throw std::runtime_error("Cayley system is singular at tau=" + std::to_string(tau));
  return *std::move(y);
}

Eigen::MatrixXd SkewFactors::smw_point(double tau) const {
  auto y = smw_point_impl(tau);
  if (!y) throw std::runtime_error("Cayley system is singular at tau=" + std::to_string(tau));
  return *std::move(y);
}

LineSearchResult line_search(const Hypergraph& h, const SkewFactors& factors, double f0,
                             double initial_tau, const OptimizerConfig& config) {
  const double pg2 = factors.ax().squaredNorm();
  LineSearchResult result;
  double tau = initial_tau;
  for (int bt = 0; bt <= config.max_backtracks; ++bt) {
    if (auto y = factors.try_point(tau)) {
      const double f = objective(h, *y, config.alpha, config.policy);
      if (std::isfinite(f) && f <= f0 - config.armijo_c1 * tau * pg2) {
        result.success = true;
        result.tau = tau;
        result.f = f;
        result.backtracks = bt;
        result.y = *std::move(y);
        return result;
      }
    }
    tau *= config.backtrack_factor;
    result.backtracks = bt + 1;
  }
  return result;
}

namespace {

double ortho_drift_of(const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd gram = x.transpose() * x;
  return (gram - Eigen::MatrixXd::Identity(x.cols(), x.cols())).cwiseAbs().maxCoeff();
}

void reorthonormalize(Eigen::MatrixXd& x) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(x.rows(), x.cols());
  for (int j = 0; j < x.cols(); ++j)
    if (qr.matrixQR()(j, j) < 0.0) q.col(j) = -q.col(j);
  x = std::move(q);
}

}  // namespace

OptimizeResult optimize(const Hypergraph& h, int p, const OptimizerConfig& config) {
  config.validate();
  if (p < 2) throw std::invalid_argument("optimize requires p >= 2");
  if (p > h.num_vertices()) throw std::invalid_argument("p exceeds the number of vertices");

  using clock = std::chrono::steady_clock;

  Eigen::MatrixXd x = random_orthonormal(h.num_vertices(), p, config.rng_seed);
  ObjectiveGradient eval = objective_gradient(h, x, config.alpha, config.policy);

  OptimizerTrace trace;
  trace.initial_f = eval.value;
  trace.reason = StopReason::MaxIterations;
  const double eps_scaled = config.epsilon * std::max(1.0, std::abs(eval.value));

  Eigen::MatrixXd prev_x, prev_ax;
  bool have_history = false;
  double f = eval.value;

  for (int t = 1; t <= config.max_iters; ++t) {
    const auto t0 = clock::now();
    SkewFactors factors(std::move(x), eval.gradient);
    const double pg = factors.pg_norm();
    if (pg <= eps_scaled) {
      trace.reason = StopReason::GradientTolerance;
      x = factors.x();
      break;
    }

    double tau0 = config.initial_step;
    if (config.bb_step && have_history) {
      const Eigen::MatrixXd s = factors.x() - prev_x;
      const Eigen::MatrixXd y = factors.ax() - prev_ax;
      const double sy = (s.array() * y.array()).sum();
      const double ss = s.squaredNorm();
      if (std::isfinite(sy) && std::abs(sy) > 0.0 && ss > 0.0)
        tau0 = std::clamp(ss / std::abs(sy), 1e-8, 10.0);
    }

    LineSearchResult ls = line_search(h, factors, f, tau0, config);
    if (!ls.success && tau0 != config.initial_step)
      ls = line_search(h, factors, f, config.initial_step, config);
    if (!ls.success) {
      trace.reason = StopReason::LineSearchFailure;
      x = factors.x();
      break;
    }

    prev_x = factors.x();
    prev_ax = factors.ax();
    have_history = true;

    x = std::move(ls.y);
    double drift = ortho_drift_of(x);
    if (drift > config.ortho_trigger) {
      reorthonormalize(x);
      ++trace.reorthonormalizations;
      drift = ortho_drift_of(x);
    }
    trace.max_ortho_drift = std::max(trace.max_ortho_drift, drift);

    eval = objective_gradient(h, x, config.alpha, config.policy);
    f = eval.value;

    const double ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    trace.iterations.push_back({t, f, ls.tau, pg, ls.backtracks, ms, drift});

    if (config.stall_window > 0 &&
        static_cast<int>(trace.iterations.size()) > config.stall_window) {
      const double f_old =
          trace.iterations[trace.iterations.size() - 1 - config.stall_window].f;
      if (std::abs(f_old - f) <= config.stall_rel_tol * std::max(1.0, std::abs(f_old))) {
        trace.reason = StopReason::ObjectiveStall;
        break;
      }
    }
  }

  OptimizeResult result{Embedding{std::move(x)}, std::move(trace)};
  return result;
}

RnhcResult rnhc(const Hypergraph& h, int p, const OptimizerConfig& config,
                const KMeansConfig& kmeans_config) {
  RnhcResult result;
  if (p == 1) {
    result.partition = Partition{std::vector<int>(h.num_vertices(), 0), 1};
    result.report = cut_report(h, result.partition);
    return result;
  }

  OptimizeResult opt = optimize(h, p, config);
  result.trace = std::move(opt.trace);

  Eigen::MatrixXd features = std::move(opt.embedding.values);
  if (config.kmeans_row_normalize) {
    for (int i = 0; i < features.rows(); ++i) {
      const double norm = features.row(i).norm();
      if (norm > 0.0) features.row(i) /= norm;
    }
  }

  KMeansConfig km = kmeans_config;
  km.k = p;
  km.policy = config.policy;
  KMeansResult clusters = kmeans(features, km);
  result.partition = Partition{std::move(clusters.labels), p};
  if (clusters.failed) {
    result.failed = true;
    return result;
  }
  try {
    result.report = cut_report(h, result.partition);
  } catch (const InvalidPartitionError&) {
    // A cluster made purely of degree-0 vertices has no volume; that is a
    // degenerate discretization, not a score.
    result.failed = true;
  }
  return result;
}

}  // namespace rnhc
