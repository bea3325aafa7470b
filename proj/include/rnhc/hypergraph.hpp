#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rnhc {

// Immutable hypergraph held as CSR in both directions: edge -> sorted
// distinct vertex ids (pins) and vertex -> sorted incident edge ids.
// Every stored edge has at least two distinct pins.
class Hypergraph {
 public:
  Hypergraph() = default;

  // Pins are sorted and deduplicated; throws std::invalid_argument if an
  // edge ends up with fewer than two distinct pins or an index is out of
  // range. Callers that want to drop such edges filter first (see parse_hgr).
  static Hypergraph build(int num_vertices, const std::vector<std::vector<int>>& edges);

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return num_edges_; }
  std::int64_t num_pins() const { return static_cast<std::int64_t>(pins_.size()); }
  int max_edge_size() const { return max_edge_size_; }

  std::span<const int> pins(int e) const {
    return {pins_.data() + edge_offsets_[e],
            static_cast<std::size_t>(edge_offsets_[e + 1] - edge_offsets_[e])};
  }
  int edge_size(int e) const { return static_cast<int>(edge_offsets_[e + 1] - edge_offsets_[e]); }

  std::span<const int> incident_edges(int v) const {
    return {incident_.data() + vertex_offsets_[v],
            static_cast<std::size_t>(vertex_offsets_[v + 1] - vertex_offsets_[v])};
  }
  int degree(int v) const { return degrees_[v]; }
  const std::vector<int>& degrees() const { return degrees_; }

  bool operator==(const Hypergraph&) const = default;

 private:
  int num_vertices_ = 0;
  int num_edges_ = 0;
  int max_edge_size_ = 0;
  std::vector<std::int64_t> edge_offsets_;    // size m+1
  std::vector<int> pins_;                     // sorted within each edge
  std::vector<std::int64_t> vertex_offsets_;  // size n+1
  std::vector<int> incident_;                 // sorted within each vertex
  std::vector<int> degrees_;                  // degrees_[v] == |incident_edges(v)|
};

struct ParseResult {
  Hypergraph hypergraph;
  int dropped_edges = 0;  // edges with < 2 distinct pins, skipped with a warning count
};

// hMetis .hgr reader: "m n [fmt]" header, then one line of 1-based pin ids per
// edge; lines starting with '%' are comments. Format codes 1/10/11 (weighted)
// raise UnsupportedFormatError. Indices are converted to 0-based.
ParseResult parse_hgr(std::istream& in);
ParseResult load_hgr(const std::string& path);

// Canonical unweighted .hgr form; parse_hgr(write_hgr(h)) reproduces h
// index-for-index.
void write_hgr(const Hypergraph& h, std::ostream& out);

}  // namespace rnhc
