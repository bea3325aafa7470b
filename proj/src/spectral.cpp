#include "rnhc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "rnhc/errors.hpp"

namespace rnhc {

ExpandedGraph::ExpandedGraph(const Hypergraph& h) : h_(&h) {
  const int n = h.num_vertices();
  inv_size_sum_ = Eigen::VectorXd::Zero(n);
  degrees_ = Eigen::VectorXd::Zero(n);
  for (int v = 0; v < n; ++v) {
    double r = 0.0, d = 0.0;
    for (int e : h.incident_edges(v)) {
      const double size = static_cast<double>(h.edge_size(e));
      r += 1.0 / size;
      d += (size - 1.0) / size;
    }
    inv_size_sum_[v] = r;
    degrees_[v] = d;
    if (d == 0.0) ++num_isolated_;
  }
}

Eigen::VectorXd ExpandedGraph::apply(const Eigen::VectorXd& x, ExecPolicy policy) const {
  const Hypergraph& h = *h_;
  const int n = h.num_vertices();
  const int m = h.num_edges();
  if (x.size() != n) throw std::invalid_argument("matvec size mismatch");

  // (W x)_u = sum_{e with u} S_e / |e| - r_u x_u with S_e = sum_{v in e} x_v.
  Eigen::VectorXd edge_sum(m);
  Eigen::VectorXd y(n);

  const auto edge_pass = [&](int e) {
    double s = 0.0;
    for (int v : h.pins(e)) s += x[v];
    edge_sum[e] = s;
  };
  const auto vertex_pass = [&](int u) {
    double acc = 0.0;
    for (int e : h.incident_edges(u)) acc += edge_sum[e] / static_cast<double>(h.edge_size(e));
    y[u] = acc - inv_size_sum_[u] * x[u];
  };

  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel
    {
      threading::note_parallel_region();
#pragma omp for schedule(static)
      for (int e = 0; e < m; ++e) edge_pass(e);
#pragma omp for schedule(static)
      for (int u = 0; u < n; ++u) vertex_pass(u);
    }
  } else {
    for (int e = 0; e < m; ++e) edge_pass(e);
    for (int u = 0; u < n; ++u) vertex_pass(u);
  }
  return y;
}

Eigen::MatrixXd ExpandedGraph::dense() const {
  const Hypergraph& h = *h_;
  const int n = h.num_vertices();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int e = 0; e < h.num_edges(); ++e) {
    const auto pins = h.pins(e);
    const double weight = 1.0 / static_cast<double>(pins.size());
    for (std::size_t i = 0; i < pins.size(); ++i)
      for (std::size_t j = i + 1; j < pins.size(); ++j) {
        w(pins[i], pins[j]) += weight;
        w(pins[j], pins[i]) += weight;
      }
  }
  return w;
}

namespace {

Eigen::VectorXd normalization_scale(const ExpandedGraph& g) {
  // d^{-1/2} with zero degrees mapped to the minimum positive degree.
  const Eigen::VectorXd& d = g.degrees();
  double min_positive = std::numeric_limits<double>::infinity();
  for (int i = 0; i < d.size(); ++i)
    if (d[i] > 0.0) min_positive = std::min(min_positive, d[i]);
  if (!std::isfinite(min_positive)) min_positive = 1.0;
  Eigen::VectorXd scale(d.size());
  for (int i = 0; i < d.size(); ++i)
    scale[i] = 1.0 / std::sqrt(d[i] > 0.0 ? d[i] : min_positive);
  return scale;
}

SpectralEmbedding dense_eigenvectors(const ExpandedGraph& g, int p) {
  const int n = g.num_vertices();
  const Eigen::VectorXd scale = normalization_scale(g);
  Eigen::MatrixXd lap = -(scale.asDiagonal() * g.dense() * scale.asDiagonal());
  lap.diagonal().array() += 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
  SpectralEmbedding out;
  out.vectors = solver.eigenvectors().leftCols(p);
  out.eigenvalues = solver.eigenvalues().head(p);
  out.isolated_vertices = g.num_isolated();
  return out;
}

// Lanczos with full reorthogonalization on N = D^{-1/2} W D^{-1/2}; the top
// Ritz pairs of N are the bottom eigenpairs of L = I - N.
SpectralEmbedding lanczos_eigenvectors(const ExpandedGraph& g, int p,
                                       const SpectralOptions& opts) {
  const int n = g.num_vertices();
  const Eigen::VectorXd scale = normalization_scale(g);
  const auto apply_n = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd t = scale.cwiseProduct(x);
    Eigen::VectorXd y = g.apply(t, opts.policy);
    return Eigen::VectorXd(scale.cwiseProduct(y));
  };

  const int k_max = std::min(n - 1, opts.lanczos_max_iters);
  std::vector<Eigen::VectorXd> basis;
  basis.reserve(k_max + 1);
  std::vector<double> alpha, beta;

  std::mt19937_64 rng(opts.lanczos_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v0(n);
  for (int i = 0; i < n; ++i) v0[i] = normal(rng);
  v0.normalize();
  basis.push_back(v0);

  SpectralEmbedding out;
  out.isolated_vertices = g.num_isolated();
  out.converged = false;

  Eigen::VectorXd ritz_values;
  Eigen::MatrixXd tridiag_vectors;
  int k_used = 0;

  for (int j = 0; j < k_max; ++j) {
    Eigen::VectorXd w = apply_n(basis[j]);
    const double a = basis[j].dot(w);
    alpha.push_back(a);
    w -= a * basis[j];
    if (j > 0) w -= beta[j - 1] * basis[j - 1];
    // Full reorthogonalization keeps the basis usable past the first
    // converged Ritz pair.
    for (const auto& q : basis) w -= q.dot(w) * q;
    for (const auto& q : basis) w -= q.dot(w) * q;

    double b = w.norm();
    if (b < 1e-13) {
      // Invariant subspace exhausted; restart with a fresh direction.
      for (int i = 0; i < n; ++i) w[i] = normal(rng);
      for (const auto& q : basis) w -= q.dot(w) * q;
      for (const auto& q : basis) w -= q.dot(w) * q;
      b = w.norm();
      if (b < 1e-13) {
        k_used = j + 1;
        break;
      }
      beta.push_back(0.0);
    } else {
      beta.push_back(b);
    }
    basis.push_back(w / b);
    k_used = j + 1;

    const int k = k_used;
    if (k >= std::max(2 * p + 2, 12) && (k % 10 == 0 || k == k_max)) {
      Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), k);
      Eigen::VectorXd sub =
          k > 1 ? Eigen::Map<const Eigen::VectorXd>(beta.data(), k - 1) : Eigen::VectorXd();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
      solver.computeFromTridiagonal(diag, sub);
      bool all_converged = true;
      const double beta_last = beta[k - 1];
      for (int i = 0; i < p; ++i) {
        const int col = k - 1 - i;  // largest Ritz values of N
        const double resid = std::abs(beta_last * solver.eigenvectors()(k - 1, col));
        if (resid > opts.lanczos_tol * std::max(1.0, std::abs(solver.eigenvalues()[col]))) {
          all_converged = false;
          break;
        }
      }
      if (all_converged || k == k_max) {
        ritz_values = solver.eigenvalues();
        tridiag_vectors = solver.eigenvectors();
        out.converged = all_converged;
        break;
      }
    }
  }

  const int k = k_used;
  if (ritz_values.size() == 0) {
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), k);
    Eigen::VectorXd sub =
        k > 1 ? Eigen::Map<const Eigen::VectorXd>(beta.data(), k - 1) : Eigen::VectorXd();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub);
    ritz_values = solver.eigenvalues();
    tridiag_vectors = solver.eigenvectors();
  }
  if (k < p) throw std::runtime_error("Lanczos basis smaller than requested p");

  Eigen::MatrixXd basis_mat(n, k);
  for (int j = 0; j < k; ++j) basis_mat.col(j) = basis[j];

  // Largest Ritz values of N are the smallest eigenvalues of L = I - N, so
  // filling from column k-1 downward already gives ascending order in L.
  out.vectors.resize(n, p);
  out.eigenvalues.resize(p);
  for (int i = 0; i < p; ++i) {
    const int col = k - 1 - i;
    out.vectors.col(i) = basis_mat * tridiag_vectors.col(col).head(k);
    out.eigenvalues[i] = 1.0 - ritz_values[col];
  }
  return out;
}

}  // namespace

SpectralEmbedding smallest_eigenvectors(const ExpandedGraph& g, int p,
                                        const SpectralOptions& opts) {
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  if (p > g.num_vertices()) throw std::invalid_argument("p exceeds the number of vertices");
  if (g.num_vertices() <= opts.dense_threshold) return dense_eigenvectors(g, p);
  return lanczos_eigenvectors(g, p, opts);
}

SpectralResult spectral_partition_from_embedding(const Hypergraph& h,
                                                 const SpectralEmbedding& embedding, int p,
                                                 const KMeansConfig& kmeans_config,
                                                 const SpectralOptions& opts) {
  SpectralResult result;
  result.embedding = embedding;

  Eigen::MatrixXd features = embedding.vectors;
  if (opts.row_normalize) {
    for (int i = 0; i < features.rows(); ++i) {
      const double norm = features.row(i).norm();
      if (norm > 0.0) features.row(i) /= norm;
    }
  }

  KMeansConfig km = kmeans_config;
  km.k = p;
  km.policy = opts.policy;
  KMeansResult clusters = kmeans(features, km);
  result.partition = Partition{std::move(clusters.labels), p};
  if (clusters.failed) {
    result.failed = true;
    return result;
  }
  try {
    result.report = cut_report(h, result.partition);
  } catch (const InvalidPartitionError&) {
    result.failed = true;  // zero-volume cluster of degree-0 vertices
  }
  return result;
}

SpectralResult spectral_partition(const Hypergraph& h, int p, const KMeansConfig& kmeans_config,
                                  const SpectralOptions& opts) {
  if (p == 1) {
    SpectralResult result;
    result.partition = Partition{std::vector<int>(h.num_vertices(), 0), 1};
    result.report = cut_report(h, result.partition);
    return result;
  }
  const ExpandedGraph g(h);
  const SpectralEmbedding embedding = smallest_eigenvectors(g, p, opts);
  return spectral_partition_from_embedding(h, embedding, p, kmeans_config, opts);
}

}  // namespace rnhc
