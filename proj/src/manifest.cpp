#include "rnhc/manifest.hpp"

#include <istream>
#include <sstream>

#include "rnhc/errors.hpp"
#include "rnhc/hypergraph.hpp"

namespace rnhc {

const std::vector<ManifestEntry>& ispd98_manifest() {
  static const std::vector<ManifestEntry> table = {
      {"ibm07", 45926, 48117},   {"ibm08", 51309, 50513},   {"ibm09", 53395, 60902},
      {"ibm10", 69429, 75196},   {"ibm11", 70558, 81454},   {"ibm12", 71076, 77240},
      {"ibm13", 84199, 99666},   {"ibm14", 147605, 152772}, {"ibm15", 161570, 186608},
      {"ibm16", 183484, 190048}, {"ibm17", 185495, 189581}, {"ibm18", 210613, 201920},
  };
  return table;
}

std::optional<ManifestEntry> find_manifest_entry(const std::vector<ManifestEntry>& table,
                                                 std::string_view name) {
  for (const auto& entry : table)
    if (entry.name == name) return entry;
  return std::nullopt;
}

std::optional<ManifestEntry> find_manifest_entry(std::string_view name) {
  return find_manifest_entry(ispd98_manifest(), name);
}

std::vector<ManifestEntry> load_manifest_csv(std::istream& in) {
  std::vector<ManifestEntry> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream iss(line);
    ManifestEntry entry;
    std::string field;
    if (!std::getline(iss, entry.name, ',')) throw ParseError("manifest row missing name");
    try {
      if (!std::getline(iss, field, ',')) throw std::invalid_argument("");
      entry.num_vertices = std::stoi(field);
      if (!std::getline(iss, field, ',')) throw std::invalid_argument("");
      entry.num_edges = std::stoi(field);
    } catch (const std::exception&) {
      throw ParseError("malformed manifest row: " + line);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

ManifestCheck verify_manifest(const Hypergraph& h, const ManifestEntry& expected) {
  ManifestCheck check;
  check.delta_vertices = h.num_vertices() - expected.num_vertices;
  check.delta_edges = h.num_edges() - expected.num_edges;
  check.ok = check.delta_vertices == 0 && check.delta_edges == 0;
  std::ostringstream report;
  report << expected.name << ": expected n=" << expected.num_vertices
         << " m=" << expected.num_edges << ", actual n=" << h.num_vertices()
         << " m=" << h.num_edges();
  if (check.ok) {
    report << " (match)";
  } else {
    report << " (delta n=" << check.delta_vertices << ", delta m=" << check.delta_edges << ")";
  }
  check.report = report.str();
  return check;
}

}  // namespace rnhc
