#include "rnhc/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rnhc/errors.hpp"

namespace rnhc {

Hypergraph Hypergraph::build(int num_vertices, const std::vector<std::vector<int>>& edges) {
  if (num_vertices <= 0) throw std::invalid_argument("hypergraph needs at least one vertex");

  Hypergraph h;
  h.num_vertices_ = num_vertices;
  h.num_edges_ = static_cast<int>(edges.size());
  h.edge_offsets_.reserve(edges.size() + 1);
  h.edge_offsets_.push_back(0);
  h.degrees_.assign(num_vertices, 0);

  std::vector<int> pins;
  for (const auto& edge : edges) {
    pins.assign(edge.begin(), edge.end());
    std::sort(pins.begin(), pins.end());
    pins.erase(std::unique(pins.begin(), pins.end()), pins.end());
    if (pins.size() < 2)
      throw std::invalid_argument("edge has fewer than two distinct vertices");
    if (pins.front() < 0 || pins.back() >= num_vertices)
      throw std::invalid_argument("edge vertex index out of range");
    h.pins_.insert(h.pins_.end(), pins.begin(), pins.end());
    h.edge_offsets_.push_back(static_cast<std::int64_t>(h.pins_.size()));
    h.max_edge_size_ = std::max(h.max_edge_size_, static_cast<int>(pins.size()));
    for (int v : pins) ++h.degrees_[v];
  }

  h.vertex_offsets_.assign(num_vertices + 1, 0);
  for (int v = 0; v < num_vertices; ++v)
    h.vertex_offsets_[v + 1] = h.vertex_offsets_[v] + h.degrees_[v];
  h.incident_.resize(h.pins_.size());
  std::vector<std::int64_t> cursor(h.vertex_offsets_.begin(), h.vertex_offsets_.end() - 1);
  for (int e = 0; e < h.num_edges_; ++e)
    for (int v : h.pins(e)) h.incident_[cursor[v]++] = e;
  // Edges are appended in ascending order, so incident lists come out sorted.
  return h;
}

namespace {

bool is_comment_or_blank_header(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '%';
}

std::vector<long long> parse_ints(const std::string& line, const char* what) {
  std::vector<long long> out;
  std::istringstream iss(line);
  std::string token;
  while (iss >> token) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
      throw ParseError(std::string("invalid integer '") + token + "' in " + what);
    out.push_back(value);
  }
  return out;
}

}  // namespace

ParseResult parse_hgr(std::istream& in) {
  std::string line;

  // Header: skip comments, then "m n [fmt]".
  long long declared_edges = 0, declared_vertices = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (is_comment_or_blank_header(line)) continue;
    const auto header = parse_ints(line, "header");
    if (header.size() < 2 || header.size() > 3) throw ParseError("malformed header line");
    declared_edges = header[0];
    declared_vertices = header[1];
    if (header.size() == 3 && header[2] != 0)
      throw UnsupportedFormatError("weighted .hgr format code " + std::to_string(header[2]) +
                                   " is not supported");
    have_header = true;
    break;
  }
  if (!have_header) throw ParseError("missing header line");
  if (declared_edges <= 0 || declared_vertices <= 0) throw ParseError("empty hypergraph");
  if (declared_vertices > (1LL << 31) - 1 || declared_edges > (1LL << 31) - 1)
    throw ParseError("hypergraph too large");

  const int n = static_cast<int>(declared_vertices);
  std::vector<std::vector<int>> edges;
  edges.reserve(static_cast<std::size_t>(declared_edges));
  int dropped = 0;

  long long read_edges = 0;
  std::vector<int> pins;
  while (read_edges < declared_edges && std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos != std::string::npos && line[pos] == '%') continue;
    ++read_edges;
    pins.clear();
    for (long long raw : parse_ints(line, "edge line")) {
      if (raw < 1 || raw > n)
        throw ParseError("vertex index " + std::to_string(raw) + " out of range [1, " +
                         std::to_string(n) + "]");
      pins.push_back(static_cast<int>(raw - 1));
    }
    std::sort(pins.begin(), pins.end());
    pins.erase(std::unique(pins.begin(), pins.end()), pins.end());
    if (pins.size() < 2) {
      ++dropped;  // never cut by any partition
      continue;
    }
    edges.push_back(pins);
  }
  if (read_edges < declared_edges)
    throw ParseError("declared " + std::to_string(declared_edges) + " edges but file has only " +
                     std::to_string(read_edges));
  if (edges.empty()) throw ParseError("no hyperedge with two or more distinct vertices");

  return {Hypergraph::build(n, edges), dropped};
}

ParseResult load_hgr(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_hgr(in);
}

void write_hgr(const Hypergraph& h, std::ostream& out) {
  out << h.num_edges() << ' ' << h.num_vertices() << '\n';
  for (int e = 0; e < h.num_edges(); ++e) {
    bool first = true;
    for (int v : h.pins(e)) {
      if (!first) out << ' ';
      out << v + 1;
      first = false;
    }
    out << '\n';
  }
}

}  // namespace rnhc
