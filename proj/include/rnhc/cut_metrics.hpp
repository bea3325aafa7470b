#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rnhc/hypergraph.hpp"

namespace rnhc {

// Per-vertex cluster labels in [0, num_clusters).
struct Partition {
  std::vector<int> labels;
  int num_clusters = 0;
};

// Throws std::invalid_argument on size or label-range violations.
void validate_partition(const Hypergraph& h, const Partition& part);

// p_e per edge plus the touched-cluster sets (CSR, sorted within each edge).
struct EdgeSpan {
  std::vector<int> span;
  std::vector<std::int64_t> offsets;
  std::vector<int> touched;
};

EdgeSpan edge_span(const Hypergraph& h, const Partition& part);

// Ordered-pair cut count: sum_e p_e (p_e - 1).
std::int64_t hcut(const Hypergraph& h, const Partition& part);

// sum_i hcut(c_i) / vol(c_i); throws InvalidPartitionError on a zero-volume
// cluster.
double nhcut(const Hypergraph& h, const Partition& part);

// Evaluates tr(S S^T (11^T - I)(X^T D X)^{-1}) with S built as sgn(X^T B).
// Cross-check path, not the fast path.
double nhcut_matrix_form(const Hypergraph& h, const Partition& part);

struct ApproxCut {
  double hcut = 0.0;
  double nhcut = 0.0;
};

// Clique-expansion approximation with edge weight 1/|e|.
ApproxCut approx_cut(const Hypergraph& h, const Partition& part);

struct CutReport {
  std::int64_t hcut = 0;
  double nhcut = 0.0;
  double approx_hcut = 0.0;
  double approx_nhcut = 0.0;
  std::vector<std::int64_t> per_cluster_volume;
  std::vector<std::int64_t> per_cluster_cut;
  std::vector<std::int64_t> edge_span_histogram;  // index k = number of edges with p_e == k
};

CutReport cut_report(const Hypergraph& h, const Partition& part);

std::string to_json(const CutReport& r);

// name,p,seed,hcut,nhcut,approx_hcut,approx_nhcut,vol_0..,cut_0..
std::string report_csv_header(int num_clusters);
std::string report_csv_row(const CutReport& r, const std::string& name, std::uint64_t seed);

}  // namespace rnhc
