#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rnhc/spectral.hpp"

using namespace rnhc;

TEST_CASE("clique expansion weights") {
  SUBCASE("single 3-edge gives 1/3 on every pair") {
    const Hypergraph h = Hypergraph::build(3, {{0, 1, 2}});
    const ExpandedGraph g(h);
    const Eigen::MatrixXd w = g.dense();
    for (int i = 0; i < 3; ++i) {
      CHECK(w(i, i) == 0.0);
      for (int j = 0; j < 3; ++j)
        if (i != j) CHECK(w(i, j) == doctest::Approx(1.0 / 3.0));
    }
  }
  SUBCASE("duplicated 2-edges add up") {
    const Hypergraph h = Hypergraph::build(2, {{0, 1}, {0, 1}});
    const ExpandedGraph g(h);
    CHECK(g.dense()(0, 1) == doctest::Approx(1.0));
  }
}

TEST_CASE("implicit matvec matches the explicit matrix") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const Hypergraph h = oracle::random_hypergraph(rng, 12, 18);
    const ExpandedGraph g(h);
    const Eigen::MatrixXd w = g.dense();
    Eigen::VectorXd x(12);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int i = 0; i < 12; ++i) x[i] = normal(rng);
    const Eigen::VectorXd implicit = g.apply(x);
    const Eigen::VectorXd explicit_product = w * x;
    CHECK((implicit - explicit_product).cwiseAbs().maxCoeff() < 1e-12);

    const Eigen::VectorXd parallel = g.apply(x, ExecPolicy::Parallel);
    CHECK(implicit == parallel);
  }
}

TEST_CASE("expanded degrees and total weight") {
  std::mt19937_64 rng(19);
  const Hypergraph h = oracle::random_hypergraph(rng, 10, 14);
  const ExpandedGraph g(h);
  const Eigen::MatrixXd w = g.dense();
  for (int u = 0; u < 10; ++u)
    CHECK(g.degrees()[u] == doctest::Approx(w.row(u).sum()).epsilon(1e-12));

  // sum_{u<v} W(u,v) = sum_e (|e|-1)/2
  double expected = 0.0;
  for (int e = 0; e < h.num_edges(); ++e)
    expected += (h.edge_size(e) - 1.0) / 2.0;
  CHECK(w.sum() / 2.0 == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("dense eigenvectors on a disconnected graph") {
  const Hypergraph h = Hypergraph::build(6, {{0, 1, 2}, {0, 1}, {3, 4, 5}, {4, 5}});
  const ExpandedGraph g(h);
  SpectralOptions opts;
  const SpectralEmbedding emb = smallest_eigenvectors(g, 2, opts);
  CHECK(emb.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(emb.eigenvalues[1] == doctest::Approx(0.0).epsilon(1e-8));

  // Eigenvectors are constant per component after D^{1/2} normalization.
  const Eigen::VectorXd& d = g.degrees();
  for (int col = 0; col < 2; ++col) {
    const Eigen::VectorXd scaled = emb.vectors.col(col).cwiseQuotient(d.cwiseSqrt());
    for (int side = 0; side < 2; ++side) {
      const double ref = scaled[3 * side];
      for (int i = 1; i < 3; ++i)
        CHECK(scaled[3 * side + i] == doctest::Approx(ref).epsilon(1e-8));
    }
  }
}

TEST_CASE("one-edge path graph has the stationary eigenvector") {
  const Hypergraph h = Hypergraph::build(3, {{0, 1, 2}});
  const ExpandedGraph g(h);
  SpectralOptions opts;
  const SpectralEmbedding emb = smallest_eigenvectors(g, 1, opts);
  CHECK(emb.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-10));
  const Eigen::VectorXd expected = g.degrees().cwiseSqrt().normalized();
  const double sign = emb.vectors(0, 0) > 0 ? 1.0 : -1.0;
  CHECK((sign * emb.vectors.col(0) - expected).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("Laplacian eigenvalues stay within [0, 2]") {
  std::mt19937_64 rng(23);
  const Hypergraph h = oracle::random_hypergraph(rng, 20, 30);
  const ExpandedGraph g(h);
  SpectralOptions opts;
  const SpectralEmbedding emb = smallest_eigenvectors(g, 20, opts);
  CHECK(emb.eigenvalues.minCoeff() >= -1e-10);
  CHECK(emb.eigenvalues.maxCoeff() <= 2.0 + 1e-10);
  const Eigen::MatrixXd gram = emb.vectors.transpose() * emb.vectors;
  CHECK((gram - Eigen::MatrixXd::Identity(20, 20)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("Lanczos path matches the dense oracle") {
  std::mt19937_64 rng(29);
  const Hypergraph h = oracle::random_hypergraph(rng, 200, 320, 5);
  const ExpandedGraph g(h);

  SpectralOptions dense_opts;
  dense_opts.dense_threshold = 4096;
  const SpectralEmbedding dense = smallest_eigenvectors(g, 4, dense_opts);

  SpectralOptions lanczos_opts;
  lanczos_opts.dense_threshold = 50;  // force the iterative path
  const SpectralEmbedding lanczos = smallest_eigenvectors(g, 4, lanczos_opts);
  CHECK(lanczos.converged);

  for (int i = 0; i < 4; ++i)
    CHECK(lanczos.eigenvalues[i] == doctest::Approx(dense.eigenvalues[i]).epsilon(1e-8));

  // Residual check against the implicit operator, column by column.
  const Eigen::VectorXd& d = g.degrees();
  Eigen::VectorXd scale(d.size());
  for (int i = 0; i < d.size(); ++i) scale[i] = d[i] > 0 ? 1.0 / std::sqrt(d[i]) : 1.0;
  for (int i = 0; i < 4; ++i) {
    const Eigen::VectorXd v = lanczos.vectors.col(i);
    const Eigen::VectorXd lv = v - scale.cwiseProduct(g.apply(scale.cwiseProduct(v)));
    CHECK((lv - lanczos.eigenvalues[i] * v).norm() <= 1e-7);
  }

  const Eigen::MatrixXd gram = lanczos.vectors.transpose() * lanczos.vectors;
  CHECK((gram - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("isolated vertices are flagged and survive normalization") {
  const Hypergraph h = Hypergraph::build(5, {{0, 1}, {1, 2}});  // 3, 4 isolated
  const ExpandedGraph g(h);
  CHECK(g.num_isolated() == 2);
  SpectralOptions opts;
  const SpectralEmbedding emb = smallest_eigenvectors(g, 2, opts);
  CHECK(emb.isolated_vertices == 2);
  CHECK(emb.vectors.allFinite());
}

TEST_CASE("spectral partition separates two components") {
  const Hypergraph h = oracle::two_component_hypergraph(5, 8, 31);
  KMeansConfig km;
  km.restarts = 10;
  km.rng_seed = 2;
  SpectralOptions opts;
  const SpectralResult result = spectral_partition(h, 2, km, opts);
  REQUIRE(!result.failed);
  CHECK(result.report.nhcut == 0.0);
}

TEST_CASE("spectral partition achieves the fixture floor") {
  const Hypergraph h = oracle::fixture4();
  KMeansConfig km;
  km.restarts = 10;
  km.rng_seed = 4;
  SpectralOptions opts;
  const SpectralResult result = spectral_partition(h, 2, km, opts);
  REQUIRE(!result.failed);
  // Exhaustive enumeration puts the 2-way optimum at 5/6.
  CHECK(result.report.nhcut <= 5.0 / 6.0 + 1e-12);
}

TEST_CASE("a cluster of degree-0 vertices is a trial failure, not a crash") {
  const Hypergraph h = Hypergraph::build(4, {{0, 1}});  // 2, 3 isolated
  SpectralEmbedding emb;
  emb.vectors.resize(4, 2);
  emb.vectors << 0.0, 1.0, 0.0, 1.0, 10.0, 0.0, 10.0, 0.0;
  emb.eigenvalues = Eigen::VectorXd::Zero(2);
  KMeansConfig km;
  km.restarts = 2;
  SpectralOptions opts;
  opts.row_normalize = false;
  const SpectralResult result = spectral_partition_from_embedding(h, emb, 2, km, opts);
  CHECK(result.failed);
}

TEST_CASE("p = 1 spectral partition is trivial") {
  const Hypergraph h = oracle::fixture4();
  KMeansConfig km;
  SpectralOptions opts;
  const SpectralResult result = spectral_partition(h, 1, km, opts);
  CHECK(!result.failed);
  CHECK(result.report.nhcut == 0.0);
}
