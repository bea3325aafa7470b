#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rnhc {

class Hypergraph;

struct ManifestEntry {
  std::string name;
  int num_vertices = 0;
  int num_edges = 0;
};

// Built-in ISPD98 table, ibm07..ibm18.
const std::vector<ManifestEntry>& ispd98_manifest();

std::optional<ManifestEntry> find_manifest_entry(std::string_view name);
std::optional<ManifestEntry> find_manifest_entry(const std::vector<ManifestEntry>& table,
                                                 std::string_view name);

// Override file, one "name,num_vertices,num_edges" row per line; '#' comments.
std::vector<ManifestEntry> load_manifest_csv(std::istream& in);

struct ManifestCheck {
  bool ok = false;
  int delta_vertices = 0;  // actual - expected
  int delta_edges = 0;
  std::string report;
};

ManifestCheck verify_manifest(const Hypergraph& h, const ManifestEntry& expected);

}  // namespace rnhc
