#include "rnhc/cut_metrics.hpp"

#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <json.hpp>

#include "rnhc/errors.hpp"

namespace rnhc {

void validate_partition(const Hypergraph& h, const Partition& part) {
  if (static_cast<int>(part.labels.size()) != h.num_vertices())
    throw std::invalid_argument("partition has " + std::to_string(part.labels.size()) +
                                " labels for " + std::to_string(h.num_vertices()) + " vertices");
  if (part.num_clusters < 1) throw std::invalid_argument("num_clusters must be >= 1");
  for (int label : part.labels)
    if (label < 0 || label >= part.num_clusters)
      throw std::invalid_argument("label " + std::to_string(label) + " out of range [0, " +
                                  std::to_string(part.num_clusters) + ")");
}

EdgeSpan edge_span(const Hypergraph& h, const Partition& part) {
  validate_partition(h, part);
  EdgeSpan result;
  result.span.resize(h.num_edges());
  result.offsets.reserve(h.num_edges() + 1);
  result.offsets.push_back(0);

  std::vector<int> stamp(part.num_clusters, -1);
  std::vector<int> touched;
  for (int e = 0; e < h.num_edges(); ++e) {
    touched.clear();
    for (int v : h.pins(e)) {
      const int c = part.labels[v];
      if (stamp[c] != e) {
        stamp[c] = e;
        touched.push_back(c);
      }
    }
    std::sort(touched.begin(), touched.end());
    result.span[e] = static_cast<int>(touched.size());
    result.touched.insert(result.touched.end(), touched.begin(), touched.end());
    result.offsets.push_back(static_cast<std::int64_t>(result.touched.size()));
  }
  return result;
}

std::int64_t hcut(const Hypergraph& h, const Partition& part) {
  const EdgeSpan spans = edge_span(h, part);
  std::int64_t total = 0;
  for (int pe : spans.span) total += static_cast<std::int64_t>(pe) * (pe - 1);
  return total;
}

namespace {

std::vector<std::int64_t> cluster_volumes(const Hypergraph& h, const Partition& part) {
  std::vector<std::int64_t> vol(part.num_clusters, 0);
  for (int v = 0; v < h.num_vertices(); ++v) vol[part.labels[v]] += h.degree(v);
  return vol;
}

std::vector<std::int64_t> per_cluster_cuts(const Partition& part, const EdgeSpan& spans) {
  // hcut(c_i) = sum over edges touching c_i of (p_e - 1).
  std::vector<std::int64_t> cut(part.num_clusters, 0);
  for (std::size_t e = 0; e < spans.span.size(); ++e) {
    const int pe = spans.span[e];
    for (std::int64_t k = spans.offsets[e]; k < spans.offsets[e + 1]; ++k)
      cut[spans.touched[k]] += pe - 1;
  }
  return cut;
}

void require_positive_volumes(const std::vector<std::int64_t>& vol) {
  for (std::size_t i = 0; i < vol.size(); ++i)
    if (vol[i] <= 0)
      throw InvalidPartitionError("cluster " + std::to_string(i) + " has zero volume");
}

}  // namespace

double nhcut(const Hypergraph& h, const Partition& part) {
  const EdgeSpan spans = edge_span(h, part);
  const auto vol = cluster_volumes(h, part);
  require_positive_volumes(vol);
  const auto cut = per_cluster_cuts(part, spans);
  double total = 0.0;
  for (int i = 0; i < part.num_clusters; ++i)
    total += static_cast<double>(cut[i]) / static_cast<double>(vol[i]);
  return total;
}

double nhcut_matrix_form(const Hypergraph& h, const Partition& part) {
  validate_partition(h, part);
  const int p = part.num_clusters;
  const int m = h.num_edges();

  // S = sgn(X^T B), assembled from the incidence structure.
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(p, m);
  for (int e = 0; e < m; ++e)
    for (int v : h.pins(e)) s(part.labels[v], e) = 1.0;

  // X^T D X for the indicator X is assembled as sum_v D(v,v) x_v x_v^T.
  Eigen::MatrixXd xtdx = Eigen::MatrixXd::Zero(p, p);
  for (int v = 0; v < h.num_vertices(); ++v) {
    const int c = part.labels[v];
    xtdx(c, c) += static_cast<double>(h.degree(v));
  }
  for (int i = 0; i < p; ++i)
    if (xtdx(i, i) <= 0.0)
      throw InvalidPartitionError("cluster " + std::to_string(i) + " has zero volume");

  const Eigen::MatrixXd pairs = Eigen::MatrixXd::Ones(p, p) - Eigen::MatrixXd::Identity(p, p);
  return ((s * s.transpose()) * pairs * xtdx.inverse()).trace();
}

ApproxCut approx_cut(const Hypergraph& h, const Partition& part) {
  validate_partition(h, part);
  const auto vol = cluster_volumes(h, part);
  require_positive_volumes(vol);

  std::vector<int> stamp(part.num_clusters, -1);
  std::vector<int> touched;
  std::vector<std::int64_t> count(part.num_clusters, 0);
  std::vector<double> per_cluster(part.num_clusters, 0.0);

  ApproxCut result;
  for (int e = 0; e < h.num_edges(); ++e) {
    const auto pins = h.pins(e);
    const double size = static_cast<double>(pins.size());
    touched.clear();
    for (int v : pins) {
      const int c = part.labels[v];
      if (stamp[c] != e) {
        stamp[c] = e;
        count[c] = 0;
        touched.push_back(c);
      }
      ++count[c];
    }
    for (int c : touched) {
      const double inside = static_cast<double>(count[c]);
      const double term = inside * (size - inside) / size;
      result.hcut += term;
      per_cluster[c] += term;
    }
  }
  for (int i = 0; i < part.num_clusters; ++i)
    result.nhcut += per_cluster[i] / static_cast<double>(vol[i]);
  return result;
}

CutReport cut_report(const Hypergraph& h, const Partition& part) {
  const EdgeSpan spans = edge_span(h, part);
  const auto vol = cluster_volumes(h, part);
  require_positive_volumes(vol);
  const auto cut = per_cluster_cuts(part, spans);

  CutReport report;
  report.per_cluster_volume = vol;
  report.per_cluster_cut = cut;
  report.edge_span_histogram.assign(part.num_clusters + 1, 0);
  for (int pe : spans.span) {
    report.hcut += static_cast<std::int64_t>(pe) * (pe - 1);
    ++report.edge_span_histogram[pe];
  }
  for (int i = 0; i < part.num_clusters; ++i)
    report.nhcut += static_cast<double>(cut[i]) / static_cast<double>(vol[i]);

  const ApproxCut approx = approx_cut(h, part);
  report.approx_hcut = approx.hcut;
  report.approx_nhcut = approx.nhcut;
  return report;
}

std::string to_json(const CutReport& r) {
  nlohmann::json j;
  j["hcut"] = r.hcut;
  j["nhcut"] = r.nhcut;
  j["approx_hcut"] = r.approx_hcut;
  j["approx_nhcut"] = r.approx_nhcut;
  j["per_cluster_volume"] = r.per_cluster_volume;
  j["per_cluster_cut"] = r.per_cluster_cut;
  j["edge_span_histogram"] = r.edge_span_histogram;
  return j.dump();
}

std::string report_csv_header(int num_clusters) {
  std::ostringstream out;
  out << "name,p,seed,hcut,nhcut,approx_hcut,approx_nhcut";
  for (int i = 0; i < num_clusters; ++i) out << ",vol_" << i;
  for (int i = 0; i < num_clusters; ++i) out << ",cut_" << i;
  return out.str();
}

std::string report_csv_row(const CutReport& r, const std::string& name, std::uint64_t seed) {
  std::ostringstream out;
  out.precision(17);
  out << name << ',' << r.per_cluster_volume.size() << ',' << seed << ',' << r.hcut << ','
      << r.nhcut << ',' << r.approx_hcut << ',' << r.approx_nhcut;
  for (std::int64_t v : r.per_cluster_volume) out << ',' << v;
  for (std::int64_t c : r.per_cluster_cut) out << ',' << c;
  return out.str();
}

}  // namespace rnhc
