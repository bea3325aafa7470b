#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rnhc/hypergraph.hpp"
#include "rnhc/kmeans.hpp"
#include "rnhc/spectral.hpp"
#include "rnhc/stiefel_optimizer.hpp"

namespace rnhc {

enum class Method { Rnhc, Spectral };
const char* to_string(Method method);
std::optional<Method> parse_method(std::string_view name);

struct BenchDataset {
  std::string name;
  Hypergraph hypergraph;
};

struct TrialPlan {
  std::vector<Method> methods = {Method::Rnhc, Method::Spectral};
  std::vector<int> p_values = {2, 3, 4, 5, 6, 7, 8};
  int trials = 40;
  std::uint64_t base_seed = 0;  // trial i uses base_seed + i, shared by both methods
  bool single_thread = false;   // timing mode: serial kernels, serial trials, one OMP thread
  bool cache_embedding = true;  // spectral eigenvectors solved once per (dataset, p) cell
  OptimizerConfig optimizer;
  KMeansConfig kmeans;  // k is overwritten per cell
  SpectralOptions spectral;

  void validate() const;
};

struct BenchRecord {
  std::string dataset;
  Method method = Method::Rnhc;
  int p = 0;
  std::uint64_t seed = 0;
  std::optional<double> nhcut;  // empty when the trial failed
  std::optional<std::int64_t> hcut;
  std::optional<double> approx_nhcut;
  double wall_ms = 0.0;
  int iters = 0;
  bool failed = false;
};

struct CellSummary {
  std::string dataset;
  Method method = Method::Rnhc;
  int p = 0;
  int trials = 0;
  int failures = 0;
  std::optional<double> best_nhcut;  // empty when every trial failed
  std::optional<std::uint64_t> best_seed;
  std::optional<double> median_nhcut;
  double total_ms = 0.0;
};

struct BenchResult {
  std::vector<BenchRecord> records;
  std::vector<CellSummary> cells;
};

// One labelled trial. `cached` supplies precomputed spectral eigenvectors;
// `out_partition`, when non-null, receives the labels.
BenchRecord run_trial(const BenchDataset& dataset, Method method, int p, std::uint64_t seed,
                      const TrialPlan& plan, Partition* out_partition = nullptr,
                      const SpectralEmbedding* cached = nullptr);

BenchResult run_bench(const std::vector<BenchDataset>& datasets, const TrialPlan& plan);

// dataset,method,p,seed,nhcut,hcut,approx_nhcut,wall_ms,iters,failed
void write_records_csv(const std::vector<BenchRecord>& records, std::ostream& out);
std::vector<BenchRecord> read_records_csv(std::istream& in);
void write_cells_csv(const std::vector<CellSummary>& cells, std::ostream& out);
void print_cells(const std::vector<CellSummary>& cells, std::ostream& out);

}  // namespace rnhc
