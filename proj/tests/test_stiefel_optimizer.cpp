#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "rnhc/stiefel_optimizer.hpp"

using namespace rnhc;

namespace {

Eigen::MatrixXd random_gradient_like(int n, int p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(n, p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = normal(rng);
  return g;
}

}  // namespace

TEST_CASE("random_orthonormal contracts") {
  const Eigen::MatrixXd q = random_orthonormal(5, 2, 7);
  const Eigen::MatrixXd gram = q.transpose() * q;
  CHECK((gram - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);

  const Eigen::MatrixXd again = random_orthonormal(5, 2, 7);
  CHECK(q == again);

  const Eigen::MatrixXd other = random_orthonormal(5, 2, 8);
  CHECK(q != other);

  CHECK_THROWS_AS(random_orthonormal(2, 3, 0), std::invalid_argument);
}

TEST_CASE("skew factors reproduce A X and the skew identity") {
  const int n = 12, p = 3;
  const Eigen::MatrixXd x = random_orthonormal(n, p, 1);
  const Eigen::MatrixXd g = random_gradient_like(n, p, 2);
  const SkewFactors factors(x, g);

  const Eigen::MatrixXd a = g * x.transpose() - x * g.transpose();
  CHECK((a + a.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((factors.ax() - a * x).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("cayley curve basics") {
  const int n = 12, p = 3;
  const Eigen::MatrixXd x = random_orthonormal(n, p, 3);
  const Eigen::MatrixXd g = random_gradient_like(n, p, 4);
  const SkewFactors factors(x, g);

  SUBCASE("tau = 0 returns X exactly") {
    const Eigen::MatrixXd y = factors.point(0.0);
    CHECK((y - x).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("feasibility along the curve") {
    for (double tau : {1e-3, 0.1, 0.5, 2.0, 25.0}) {
      const Eigen::MatrixXd y = factors.point(tau);
      const Eigen::MatrixXd gram = y.transpose() * y;
      CHECK((gram - Eigen::MatrixXd::Identity(p, p)).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }

  SUBCASE("SMW path equals the dense-inverse path") {
    for (double tau : {1e-3, 0.05, 0.5, 3.0}) {
      const Eigen::MatrixXd smw = factors.smw_point(tau);
      const Eigen::MatrixXd dense = factors.dense_point(tau);
      CHECK((smw - dense).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }

  SUBCASE("derivative at zero is -A X") {
    const double tau = 1e-7;
    const Eigen::MatrixXd y = factors.point(tau);
    const Eigen::MatrixXd slope = (y - x) / tau;
    CHECK((slope + factors.ax()).cwiseAbs().maxCoeff() < 1e-5);
  }
}

TEST_CASE("line search decreases the objective on a random instance") {
  std::mt19937_64 rng(5);
  const Hypergraph h = oracle::random_hypergraph(rng, 14, 20);
  OptimizerConfig config;
  config.alpha = 50.0;

  const Eigen::MatrixXd x = random_orthonormal(14, 3, 6);
  const ObjectiveGradient eval = objective_gradient(h, x, config.alpha);
  const SkewFactors factors(x, eval.gradient);
  REQUIRE(factors.pg_norm() > 0.0);

  const LineSearchResult ls = line_search(h, factors, eval.value, config.initial_step, config);
  REQUIRE(ls.success);
  CHECK(ls.f < eval.value);
  CHECK(ls.tau > 0.0);
}

TEST_CASE("backtracking shrinks an oversized initial step geometrically") {
  std::mt19937_64 rng(15);
  const Hypergraph h = oracle::random_hypergraph(rng, 14, 20);
  OptimizerConfig config;
  config.alpha = 50.0;

  const Eigen::MatrixXd x = random_orthonormal(14, 3, 16);
  const ObjectiveGradient eval = objective_gradient(h, x, config.alpha);
  const SkewFactors factors(x, eval.gradient);

  const double huge = 1e6;
  const LineSearchResult ls = line_search(h, factors, eval.value, huge, config);
  REQUIRE(ls.success);
  CHECK(ls.backtracks > 0);
  CHECK(ls.backtracks <= config.max_backtracks);
  CHECK(ls.tau ==
        doctest::Approx(huge * std::pow(config.backtrack_factor, ls.backtracks)).epsilon(1e-12));
}

TEST_CASE("config validation") {
  OptimizerConfig config;
  config.max_iters = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.max_iters = 1;
  config.epsilon = 0.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.epsilon = 1e-9;
  config.backtrack_factor = 1.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("T = 1 performs exactly one accepted or failed step") {
  std::mt19937_64 rng(25);
  const Hypergraph h = oracle::random_hypergraph(rng, 10, 12);
  OptimizerConfig config;
  config.max_iters = 1;
  config.rng_seed = 3;
  const OptimizeResult result = optimize(h, 2, config);
  CHECK(result.trace.iterations.size() <= 1);
}

TEST_CASE("optimize rejects bad p") {
  std::mt19937_64 rng(27);
  const Hypergraph h = oracle::random_hypergraph(rng, 6, 8);
  OptimizerConfig config;
  CHECK_THROWS_AS(optimize(h, 1, config), std::invalid_argument);
  CHECK_THROWS_AS(optimize(h, 7, config), std::invalid_argument);
}

TEST_CASE("objective is non-increasing and feasibility is preserved") {
  std::mt19937_64 rng(35);
  const Hypergraph h = oracle::random_hypergraph(rng, 30, 45);
  OptimizerConfig config;
  config.max_iters = 200;
  config.rng_seed = 11;
  const OptimizeResult result = optimize(h, 3, config);

  double last = result.trace.initial_f;
  for (const auto& record : result.trace.iterations) {
    CHECK(record.f <= last + 1e-12);
    last = record.f;
  }
  CHECK(result.trace.max_ortho_drift <= 1e-8);
  CHECK(result.embedding.ortho_drift() <= 1e-8);
}

TEST_CASE("descent slope at the origin is negative") {
  std::mt19937_64 rng(45);
  const Hypergraph h = oracle::random_hypergraph(rng, 16, 24);
  const double alpha = 60.0;
  const Eigen::MatrixXd x = random_orthonormal(16, 3, 5);
  const ObjectiveGradient eval = objective_gradient(h, x, alpha);
  const SkewFactors factors(x, eval.gradient);
  REQUIRE(factors.pg_norm() > 0.0);

  const double tau = 1e-6;
  const double f_plus = objective(h, factors.point(tau), alpha);
  CHECK((f_plus - eval.value) / tau < 0.0);
}

TEST_CASE("rnhc recovers two disjoint components") {
  const Hypergraph h = oracle::two_component_hypergraph(5, 8, 99);
  OptimizerConfig config;
  config.max_iters = 300;
  config.rng_seed = 1;
  KMeansConfig km;
  km.restarts = 5;
  const RnhcResult result = rnhc::rnhc(h, 2, config, km);
  REQUIRE(!result.failed);
  CHECK(result.report.hcut == 0);
  CHECK(result.report.nhcut == 0.0);
}

TEST_CASE("rnhc with p = 1 is the trivial partition") {
  const Hypergraph h = oracle::fixture4();
  OptimizerConfig config;
  KMeansConfig km;
  const RnhcResult result = rnhc::rnhc(h, 1, config, km);
  CHECK(!result.failed);
  CHECK(result.report.nhcut == 0.0);
  CHECK(result.trace.iterations.empty());
  for (int label : result.partition.labels) CHECK(label == 0);
}

TEST_CASE("rnhc is deterministic for a fixed seed") {
  const Hypergraph h = oracle::two_component_hypergraph(5, 8, 7);
  OptimizerConfig config;
  config.max_iters = 100;
  config.rng_seed = 42;
  KMeansConfig km;
  km.restarts = 3;
  const RnhcResult a = rnhc::rnhc(h, 2, config, km);
  const RnhcResult b = rnhc::rnhc(h, 2, config, km);
  CHECK(a.partition.labels == b.partition.labels);
  CHECK(a.report.nhcut == b.report.nhcut);
  REQUIRE(a.trace.iterations.size() == b.trace.iterations.size());
  for (std::size_t i = 0; i < a.trace.iterations.size(); ++i)
    CHECK(a.trace.iterations[i].f == b.trace.iterations[i].f);
}

TEST_CASE("trace serializes to the documented CSV") {
  std::mt19937_64 rng(55);
  const Hypergraph h = oracle::random_hypergraph(rng, 10, 12);
  OptimizerConfig config;
  config.max_iters = 5;
  const OptimizeResult result = optimize(h, 2, config);
  std::ostringstream out;
  write_trace_csv(result.trace, out);
  CHECK(out.str().substr(0, 32) == "iter,f,tau,pg_norm,backtracks,ms");
}

TEST_CASE("parallel optimizer run matches serial bitwise") {
  std::mt19937_64 rng(65);
  const Hypergraph h = oracle::random_hypergraph(rng, 25, 40);
  OptimizerConfig serial;
  serial.max_iters = 50;
  serial.rng_seed = 9;
  OptimizerConfig parallel = serial;
  parallel.policy = ExecPolicy::Parallel;
  const OptimizeResult a = optimize(h, 3, serial);
  const OptimizeResult b = optimize(h, 3, parallel);
  REQUIRE(a.trace.iterations.size() == b.trace.iterations.size());
  for (std::size_t i = 0; i < a.trace.iterations.size(); ++i)
    CHECK(a.trace.iterations[i].f == b.trace.iterations[i].f);
  CHECK(a.embedding.values == b.embedding.values);
}
