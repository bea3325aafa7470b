#include "rnhc/synthetic.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace rnhc {

namespace {

// Net sizes roughly matching VLSI netlist statistics: mostly 2-3 pins with a
// geometric tail capped at 48.
int sample_net_size(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = u(rng);
  if (r < 0.50) return 2;
  if (r < 0.72) return 3;
  if (r < 0.84) return 4;
  if (r < 0.91) return 5;
  int size = 6;
  double mass = 0.91;
  double step = 0.03;
  while (size < 48 && r >= mass + step) {
    mass += step;
    step *= 0.72;
    ++size;
  }
  return size;
}

}  // namespace

Hypergraph synthetic_netlist(const SyntheticSpec& spec) {
  const int n = spec.num_vertices;
  const int m = spec.num_edges;
  const int clusters = std::max(1, spec.planted_clusters);
  if (n < 2 * clusters) throw std::invalid_argument("too few vertices for the planted clusters");
  if (m < 1) throw std::invalid_argument("need at least one edge");

  std::mt19937_64 rng(spec.seed);

  // Contiguous cluster blocks over a shuffled vertex order.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> block_begin(clusters + 1);
  for (int c = 0; c <= clusters; ++c)
    block_begin[c] = static_cast<int>(static_cast<std::int64_t>(n) * c / clusters);

  std::vector<std::vector<int>> edges;
  edges.reserve(m);
  std::vector<int> pins;

  // Chain nets inside each block first so no vertex is left uncovered.
  for (int c = 0; c < clusters && static_cast<int>(edges.size()) < m; ++c) {
    for (int i = block_begin[c]; i + 1 < block_begin[c + 1] && static_cast<int>(edges.size()) < m;
         i += 2) {
      pins = {order[i], order[i + 1]};
      if (i + 2 < block_begin[c + 1]) pins.push_back(order[i + 2]);
      edges.push_back(pins);
    }
  }

  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> cluster_pick(0, clusters - 1);
  while (static_cast<int>(edges.size()) < m) {
    const int size = sample_net_size(rng);
    const bool cross = clusters > 1 && u(rng) < spec.cross_fraction;
    pins.clear();
    if (cross) {
      int c1 = cluster_pick(rng);
      int c2 = cluster_pick(rng);
      if (c1 == c2) c2 = (c2 + 1) % clusters;
      for (int i = 0; i < size; ++i) {
        const int c = (i % 2 == 0) ? c1 : c2;
        std::uniform_int_distribution<int> pick(block_begin[c], block_begin[c + 1] - 1);
        pins.push_back(order[pick(rng)]);
      }
    } else {
      const int c = cluster_pick(rng);
      std::uniform_int_distribution<int> pick(block_begin[c], block_begin[c + 1] - 1);
      for (int i = 0; i < size; ++i) pins.push_back(order[pick(rng)]);
    }
    std::sort(pins.begin(), pins.end());
    pins.erase(std::unique(pins.begin(), pins.end()), pins.end());
    if (pins.size() < 2) continue;  // resample collapsed nets
    edges.push_back(pins);
  }

  return Hypergraph::build(n, edges);
}

}  // namespace rnhc
