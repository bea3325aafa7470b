#include "rnhc/smoothed_objective.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rnhc {

Embedding Embedding::from_matrix(Eigen::MatrixXd values, double tol) {
  if (!values.allFinite()) throw std::invalid_argument("embedding has non-finite entries");
  Embedding emb{std::move(values)};
  if (emb.ortho_drift() > tol)
    throw std::invalid_argument("embedding columns are not orthonormal within tolerance");
  return emb;
}

double Embedding::ortho_drift() const {
  const Eigen::MatrixXd gram = values.transpose() * values;
  return (gram - Eigen::MatrixXd::Identity(values.cols(), values.cols()))
      .cwiseAbs()
      .maxCoeff();
}

namespace {

void check_inputs(const Hypergraph& h, const Eigen::MatrixXd& x, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (x.rows() != h.num_vertices())
    throw std::invalid_argument("embedding rows do not match vertex count");
  if (x.cols() < 1) throw std::invalid_argument("embedding needs at least one column");
}

// Log-sum-exp for one (c,e) slot; pins scanned in stored order in every mode.
inline void edge_lse(const Eigen::MatrixXd& x, std::span<const int> pins, int c, double alpha,
                     double& max_out, double& z_out) {
  double m = x(pins[0], c);
  for (std::size_t i = 1; i < pins.size(); ++i) m = std::max(m, x(pins[i], c));
  double z = 0.0;
  for (int v : pins) z += std::exp(alpha * (x(v, c) - m));
  max_out = m;
  z_out = z;
}

}  // namespace

SmoothedSpan smoothed_span(const Hypergraph& h, const Eigen::MatrixXd& x, double alpha,
                           ExecPolicy policy) {
  check_inputs(h, x, alpha);
  const int m = h.num_edges();
  const int p = static_cast<int>(x.cols());
  SmoothedSpan span;
  span.alpha = alpha;
  span.values.resize(p, m);

  const auto fill_edge = [&](int e) {
    const auto pins = h.pins(e);
    for (int c = 0; c < p; ++c) {
      double mx, z;
      edge_lse(x, pins, c, alpha, mx, z);
      span.values(c, e) = mx + std::log(z) / alpha;
    }
  };

  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel
    {
      threading::note_parallel_region();
#pragma omp for schedule(static)
      for (int e = 0; e < m; ++e) fill_edge(e);
    }
  } else {
    for (int e = 0; e < m; ++e) fill_edge(e);
  }
  return span;
}

double objective(const Hypergraph& h, const Eigen::MatrixXd& x, double alpha, ExecPolicy policy) {
  check_inputs(h, x, alpha);
  const int m = h.num_edges();
  const int p = static_cast<int>(x.cols());

  const auto edge_partial = [&](int e) {
    const auto pins = h.pins(e);
    double partial = 0.0;
    for (int c = 0; c < p; ++c) {
      double mx, z;
      edge_lse(x, pins, c, alpha, mx, z);
      partial += mx + std::log(z) / alpha;
    }
    return partial;
  };

  double total = 0.0;
  if (policy == ExecPolicy::Parallel) {
    std::vector<double> partials(m);
#pragma omp parallel
    {
      threading::note_parallel_region();
#pragma omp for schedule(static)
      for (int e = 0; e < m; ++e) partials[e] = edge_partial(e);
    }
    for (int e = 0; e < m; ++e) total += partials[e];
  } else {
    for (int e = 0; e < m; ++e) total += edge_partial(e);
  }
  return total;
}

ObjectiveGradient objective_gradient(const Hypergraph& h, const Eigen::MatrixXd& x, double alpha,
                                     ExecPolicy policy) {
  check_inputs(h, x, alpha);
  const int n = h.num_vertices();
  const int m = h.num_edges();
  const int p = static_cast<int>(x.cols());

  ObjectiveGradient result;
  result.gradient = Eigen::MatrixXd::Zero(n, p);

  if (policy == ExecPolicy::Parallel) {
    // Two race-free passes: edges fill the per-(c,e) statistics, vertices pull
    // their own softmax weights. Addend order per output slot matches the
    // serial path, so results are bitwise identical.
    Eigen::MatrixXd max_ce(p, m), z_ce(p, m);
    std::vector<double> partials(m);
#pragma omp parallel
    {
      threading::note_parallel_region();
#pragma omp for schedule(static)
      for (int e = 0; e < m; ++e) {
        const auto pins = h.pins(e);
        double partial = 0.0;
        for (int c = 0; c < p; ++c) {
          double mx, z;
          edge_lse(x, pins, c, alpha, mx, z);
          max_ce(c, e) = mx;
          z_ce(c, e) = z;
          partial += mx + std::log(z) / alpha;
        }
        partials[e] = partial;
      }
#pragma omp for schedule(static)
      for (int v = 0; v < n; ++v) {
        for (int c = 0; c < p; ++c) {
          double g = 0.0;
          for (int e : h.incident_edges(v))
            g += std::exp(alpha * (x(v, c) - max_ce(c, e))) / z_ce(c, e);
          result.gradient(v, c) = g;
        }
      }
    }
    double total = 0.0;
    for (int e = 0; e < m; ++e) total += partials[e];
    result.value = total;
  } else {
    std::vector<double> weights(h.max_edge_size());
    double total = 0.0;
    for (int e = 0; e < m; ++e) {
      const auto pins = h.pins(e);
      double partial = 0.0;
      for (int c = 0; c < p; ++c) {
        double mx = x(pins[0], c);
        for (std::size_t i = 1; i < pins.size(); ++i) mx = std::max(mx, x(pins[i], c));
        double z = 0.0;
        for (std::size_t i = 0; i < pins.size(); ++i) {
          weights[i] = std::exp(alpha * (x(pins[i], c) - mx));
          z += weights[i];
        }
        partial += mx + std::log(z) / alpha;
        for (std::size_t i = 0; i < pins.size(); ++i) result.gradient(pins[i], c) += weights[i] / z;
      }
      total += partial;
    }
    result.value = total;
  }
  return result;
}

}  // namespace rnhc
