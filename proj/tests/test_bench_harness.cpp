#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "rnhc/bench_harness.hpp"
#include "rnhc/synthetic.hpp"

using namespace rnhc;

namespace {

TrialPlan small_plan() {
  TrialPlan plan;
  plan.p_values = {2};
  plan.trials = 4;
  plan.optimizer.max_iters = 60;
  plan.kmeans.restarts = 3;
  return plan;
}

BenchDataset two_component_dataset(std::uint64_t seed = 3) {
  return {"twocomp", oracle::two_component_hypergraph(6, 10, seed)};
}

}  // namespace

TEST_CASE("run_bench produces one record per (dataset, method, p, trial)") {
  const TrialPlan plan = small_plan();
  const BenchResult result = run_bench({two_component_dataset()}, plan);
  CHECK(result.records.size() == 2 * plan.trials);
  CHECK(result.cells.size() == 2);
  for (const auto& cell : result.cells) {
    CHECK(cell.trials == plan.trials);
    REQUIRE(cell.best_nhcut.has_value());
    CHECK(*cell.best_nhcut == 0.0);
  }
}

TEST_CASE("seed schedule is base_seed + trial index, shared across methods") {
  TrialPlan plan = small_plan();
  plan.base_seed = 100;
  const BenchResult result = run_bench({two_component_dataset()}, plan);
  for (std::size_t i = 0; i < result.records.size(); ++i)
    CHECK(result.records[i].seed == 100 + (i % plan.trials));
}

TEST_CASE("single-thread cell reproduces identical records") {
  TrialPlan plan = small_plan();
  plan.single_thread = true;
  const BenchDataset ds = two_component_dataset(9);
  const BenchResult a = run_bench({ds}, plan);
  const BenchResult b = run_bench({ds}, plan);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].nhcut == b.records[i].nhcut);
    CHECK(a.records[i].hcut == b.records[i].hcut);
    CHECK(a.records[i].iters == b.records[i].iters);
    CHECK(a.records[i].failed == b.records[i].failed);
  }
}

TEST_CASE("best-of-R is monotone in R") {
  TrialPlan small = small_plan();
  small.trials = 2;
  TrialPlan large = small_plan();
  large.trials = 6;
  const BenchDataset ds = two_component_dataset(11);
  const BenchResult a = run_bench({ds}, small);
  const BenchResult b = run_bench({ds}, large);
  for (std::size_t c = 0; c < a.cells.size(); ++c) {
    REQUIRE(a.cells[c].best_nhcut.has_value());
    REQUIRE(b.cells[c].best_nhcut.has_value());
    CHECK(*b.cells[c].best_nhcut <= *a.cells[c].best_nhcut);
  }
}

TEST_CASE("R = 1 reduces to a single trial per cell") {
  TrialPlan plan = small_plan();
  plan.trials = 1;
  plan.methods = {Method::Rnhc};
  const BenchResult result = run_bench({two_component_dataset()}, plan);
  CHECK(result.records.size() == 1);
  const BenchRecord direct =
      run_trial(two_component_dataset(), Method::Rnhc, 2, plan.base_seed, plan);
  CHECK(result.records[0].nhcut == direct.nhcut);
}

TEST_CASE("failed trials carry no nhcut and are excluded from minima") {
  // p = 7 on a 4-vertex hypergraph cannot produce 7 clusters.
  BenchDataset tiny{"tiny", oracle::fixture4()};
  TrialPlan plan = small_plan();
  plan.p_values = {7};
  plan.methods = {Method::Rnhc};
  const BenchResult result = run_bench({tiny}, plan);
  for (const auto& record : result.records) {
    CHECK(record.failed);
    CHECK(!record.nhcut.has_value());
  }
  REQUIRE(result.cells.size() == 1);
  CHECK(result.cells[0].failures == plan.trials);
  CHECK(!result.cells[0].best_nhcut.has_value());
}

TEST_CASE("records CSV round-trips") {
  TrialPlan plan = small_plan();
  plan.trials = 2;
  const BenchResult result = run_bench({two_component_dataset(13)}, plan);

  std::ostringstream out;
  write_records_csv(result.records, out);
  CHECK(out.str().rfind("dataset,method,p,seed,nhcut,hcut,approx_nhcut,wall_ms,iters,failed",
                        0) == 0);

  std::istringstream in(out.str());
  const auto parsed = read_records_csv(in);
  REQUIRE(parsed.size() == result.records.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].dataset == result.records[i].dataset);
    CHECK(parsed[i].method == result.records[i].method);
    CHECK(parsed[i].p == result.records[i].p);
    CHECK(parsed[i].seed == result.records[i].seed);
    CHECK(parsed[i].nhcut == result.records[i].nhcut);
    CHECK(parsed[i].hcut == result.records[i].hcut);
    CHECK(parsed[i].iters == result.records[i].iters);
    CHECK(parsed[i].failed == result.records[i].failed);
  }
}

TEST_CASE("plan validation") {
  TrialPlan plan = small_plan();
  plan.trials = 0;
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  plan = small_plan();
  plan.p_values = {1};
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
}

TEST_CASE("synthetic netlist is deterministic and covers every vertex") {
  SyntheticSpec spec;
  spec.num_vertices = 500;
  spec.num_edges = 620;
  spec.seed = 5;
  const Hypergraph a = synthetic_netlist(spec);
  const Hypergraph b = synthetic_netlist(spec);
  CHECK(a == b);
  CHECK(a.num_vertices() == 500);
  CHECK(a.num_edges() == 620);
  for (int v = 0; v < a.num_vertices(); ++v) CHECK(a.degree(v) >= 1);

  spec.seed = 6;
  CHECK(!(synthetic_netlist(spec) == a));
}
