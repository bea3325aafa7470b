#pragma once

#include <cstdint>

#include "rnhc/hypergraph.hpp"

namespace rnhc {

// Deterministic netlist-like hypergraph: planted vertex clusters, short
// chain nets that guarantee every vertex at least one pin, and a
// heavy-tailed net size distribution dominated by 2- and 3-pin nets.
// Stands in for the ISPD98 files at matched (n, m) scale when the real
// benchmarks are not on disk.
struct SyntheticSpec {
  int num_vertices = 0;
  int num_edges = 0;
  int planted_clusters = 3;
  double cross_fraction = 0.10;  // nets drawing pins from two clusters
  std::uint64_t seed = 1;
};

Hypergraph synthetic_netlist(const SyntheticSpec& spec);

}  // namespace rnhc
