// Command-line front end: info / eval / partition / bench.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rnhc/bench_harness.hpp"
#include "rnhc/cut_metrics.hpp"
#include "rnhc/errors.hpp"
#include "rnhc/hypergraph.hpp"
#include "rnhc/manifest.hpp"
#include "rnhc/parallel.hpp"
#include "rnhc/spectral.hpp"
#include "rnhc/stiefel_optimizer.hpp"

namespace {

constexpr int kExitInputError = 2;
constexpr int kExitTrialFailure = 3;

std::string dataset_name(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

struct CommonOpts {
  double alpha = 100.0;
  int max_iters = 1000;
  double eps = 1e-9;
  std::uint64_t seed = 0;
  int restarts = 10;
  bool single_thread = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--alpha", opts.alpha, "Log-sum-exp smoothing parameter")->capture_default_str();
  cmd->add_option("--max-iters", opts.max_iters, "Optimizer iteration cap")->capture_default_str();
  cmd->add_option("--eps", opts.eps, "Projected-gradient stopping tolerance")
      ->capture_default_str();
  cmd->add_option("--seed", opts.seed, "Base RNG seed")->capture_default_str();
  cmd->add_option("--restarts", opts.restarts, "K-Means restarts per trial")
      ->capture_default_str();
  cmd->add_flag("--single-thread", opts.single_thread,
                "Timing mode: serial kernels on one thread");
}

int cmd_info(const std::string& path, const std::string& manifest_path) {
  rnhc::ParseResult parsed;
  try {
    parsed = rnhc::load_hgr(path);
  } catch (const rnhc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInputError;
  }
  const rnhc::Hypergraph& h = parsed.hypergraph;

  const std::string name = dataset_name(path);
  std::int64_t degree_sum = 0;
  int degree_min = h.num_vertices() ? h.degree(0) : 0, degree_max = 0;
  for (int v = 0; v < h.num_vertices(); ++v) {
    degree_sum += h.degree(v);
    degree_min = std::min(degree_min, h.degree(v));
    degree_max = std::max(degree_max, h.degree(v));
  }
  int size_min = h.num_edges() ? h.edge_size(0) : 0;
  for (int e = 0; e < h.num_edges(); ++e) size_min = std::min(size_min, h.edge_size(e));

  std::cout << "name: " << name << "\n"
            << "vertices: " << h.num_vertices() << "\n"
            << "edges: " << h.num_edges() << "\n"
            << "pins: " << h.num_pins() << "\n"
            << "dropped_edges: " << parsed.dropped_edges << "\n"
            << "degree: min=" << degree_min << " mean="
            << static_cast<double>(degree_sum) / std::max(1, h.num_vertices())
            << " max=" << degree_max << "\n"
            << "edge_size: min=" << size_min << " mean="
            << static_cast<double>(h.num_pins()) / std::max(1, h.num_edges())
            << " max=" << h.max_edge_size() << "\n";

  std::optional<rnhc::ManifestEntry> entry;
  if (!manifest_path.empty()) {
    std::ifstream in(manifest_path);
    if (!in) {
      std::cerr << "cannot open manifest file '" << manifest_path << "'\n";
      return kExitInputError;
    }
    entry = rnhc::find_manifest_entry(rnhc::load_manifest_csv(in), name);
  } else {
    entry = rnhc::find_manifest_entry(name);
  }
  if (entry) {
    const auto check = rnhc::verify_manifest(h, *entry);
    std::cout << "manifest: " << check.report << "\n";
    if (!check.ok) return 1;
  } else {
    std::cout << "manifest: no entry for '" << name << "'\n";
  }
  return 0;
}

std::vector<int> read_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open labels file '" + path + "'");
  std::vector<int> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    labels.push_back(std::stoi(line));
  }
  return labels;
}

void write_labels(const rnhc::Partition& part, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write labels file '" + path + "'");
  for (int label : part.labels) out << label << '\n';
}

int cmd_eval(const std::string& path, const std::string& labels_path, int p, bool csv) {
  try {
    const rnhc::Hypergraph h = rnhc::load_hgr(path).hypergraph;
    rnhc::Partition part{read_labels(labels_path), p};
    if (static_cast<int>(part.labels.size()) != h.num_vertices())
      throw std::invalid_argument("labels file has " + std::to_string(part.labels.size()) +
                                  " lines for " + std::to_string(h.num_vertices()) + " vertices");
    const rnhc::CutReport report = rnhc::cut_report(h, part);
    if (csv)
      std::cout << rnhc::report_csv_header(p) << "\n"
                << rnhc::report_csv_row(report, dataset_name(path), 0) << "\n";
    else
      std::cout << rnhc::to_json(report) << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_partition(const std::string& path, const std::string& method_name, int p,
                  const CommonOpts& common, std::optional<bool> row_normalize,
                  const std::string& out_path, const std::string& trace_path, bool csv) {
  const auto method = rnhc::parse_method(method_name);
  if (!method) {
    std::cerr << "unknown method '" << method_name << "'\n";
    return kExitInputError;
  }
  try {
    if (common.single_thread) rnhc::threading::force_single_thread();
    const rnhc::Hypergraph h = rnhc::load_hgr(path).hypergraph;

    rnhc::OptimizerConfig opt;
    opt.alpha = common.alpha;
    opt.max_iters = common.max_iters;
    opt.epsilon = common.eps;
    opt.rng_seed = common.seed;
    opt.policy = common.single_thread ? rnhc::ExecPolicy::Serial : rnhc::ExecPolicy::Parallel;
    if (row_normalize) opt.kmeans_row_normalize = *row_normalize;

    rnhc::KMeansConfig km;
    km.k = p;
    km.restarts = common.restarts;
    km.rng_seed = common.seed;
    km.policy = opt.policy;

    rnhc::Partition part;
    rnhc::CutReport report;
    bool failed = false;

    if (*method == rnhc::Method::Rnhc) {
      rnhc::RnhcResult result = rnhc::rnhc(h, p, opt, km);
      part = std::move(result.partition);
      report = result.report;
      failed = result.failed;
      if (!trace_path.empty()) {
        std::ofstream trace_out(trace_path);
        rnhc::write_trace_csv(result.trace, trace_out);
      }
    } else {
      rnhc::SpectralOptions spectral;
      spectral.policy = opt.policy;
      if (row_normalize) spectral.row_normalize = *row_normalize;
      rnhc::SpectralResult result = rnhc::spectral_partition(h, p, km, spectral);
      part = std::move(result.partition);
      report = result.report;
      failed = result.failed;
    }

    if (failed) {
      std::cerr << "trial failed: K-Means did not produce " << p << " non-empty clusters\n";
      return kExitTrialFailure;
    }
    write_labels(part, out_path);
    if (csv)
      std::cout << rnhc::report_csv_header(p) << "\n"
                << rnhc::report_csv_row(report, dataset_name(path), common.seed) << "\n";
    else
      std::cout << rnhc::to_json(report) << "\n";
    return 0;
  } catch (const rnhc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_bench(const std::vector<std::string>& paths, const std::string& method_name,
              std::vector<int> p_values, int trials, const CommonOpts& common,
              bool cache_embedding, const std::string& out_path, const std::string& cells_path) {
  try {
    std::vector<rnhc::BenchDataset> datasets;
    for (const std::string& path : paths) {
      rnhc::BenchDataset ds;
      ds.name = dataset_name(path);
      ds.hypergraph = rnhc::load_hgr(path).hypergraph;
      if (const auto entry = rnhc::find_manifest_entry(ds.name)) {
        const auto check = rnhc::verify_manifest(ds.hypergraph, *entry);
        if (!check.ok) std::cerr << "warning: " << check.report << "\n";
      }
      datasets.push_back(std::move(ds));
    }

    rnhc::TrialPlan plan;
    if (method_name == "both") {
      plan.methods = {rnhc::Method::Rnhc, rnhc::Method::Spectral};
    } else {
      const auto method = rnhc::parse_method(method_name);
      if (!method) {
        std::cerr << "unknown method '" << method_name << "'\n";
        return kExitInputError;
      }
      plan.methods = {*method};
    }
    if (!p_values.empty()) plan.p_values = std::move(p_values);
    plan.trials = trials;
    plan.base_seed = common.seed;
    plan.single_thread = common.single_thread;
    plan.cache_embedding = cache_embedding;
    plan.optimizer.alpha = common.alpha;
    plan.optimizer.max_iters = common.max_iters;
    plan.optimizer.epsilon = common.eps;
    plan.kmeans.restarts = common.restarts;

    const rnhc::BenchResult result = rnhc::run_bench(datasets, plan);

    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write '" << out_path << "'\n";
      return kExitInputError;
    }
    rnhc::write_records_csv(result.records, out);
    if (!cells_path.empty()) {
      std::ofstream cells_out(cells_path);
      rnhc::write_cells_csv(result.cells, cells_out);
    }
    rnhc::print_cells(result.cells, std::cout);
    std::cout << "records: " << result.records.size() << " -> " << out_path << "\n";
    return 0;
  } catch (const rnhc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relaxed normalized hypergraph cut (RNHC) toolkit"};
  app.require_subcommand(1);

  auto* info = app.add_subcommand("info", "Dataset summary and manifest check");
  std::string info_path, info_manifest;
  info->add_option("path", info_path, "hMetis .hgr file")->required();
  info->add_option("--manifest-file", info_manifest, "Manifest override CSV (name,n,m)");

  auto* eval = app.add_subcommand("eval", "Score an external assignment");
  std::string eval_path, eval_labels;
  int eval_p = 2;
  bool eval_csv = false;
  eval->add_option("path", eval_path, "hMetis .hgr file")->required();
  eval->add_option("assignment", eval_labels, "One 0-based label per line")->required();
  eval->add_option("--p", eval_p, "Number of clusters")->required();
  eval->add_flag("--csv", eval_csv, "Emit the CutReport as a CSV row instead of JSON");

  auto* part = app.add_subcommand("partition", "Partition one dataset");
  std::string part_path, part_method = "rnhc", part_out = "partition.labels", part_trace;
  int part_p = 2;
  CommonOpts part_common;
  bool rn_on = false, rn_off = false;
  part->add_option("path", part_path, "hMetis .hgr file")->required();
  part->add_option("--method", part_method, "rnhc | spectral")->capture_default_str();
  part->add_option("--p", part_p, "Number of clusters")->required();
  add_common(part, part_common);
  part->add_flag("--row-normalize", rn_on, "Row-normalize features before K-Means");
  part->add_flag("--no-row-normalize", rn_off, "Keep raw feature rows");
  part->add_option("--out", part_out, "Assignment output path")->capture_default_str();
  part->add_option("--trace-out", part_trace, "Optimizer trace CSV path");
  bool part_csv = false;
  part->add_flag("--csv", part_csv, "Emit the CutReport as a CSV row instead of JSON");

  auto* bench = app.add_subcommand("bench", "Best-of-R protocol over datasets");
  std::vector<std::string> bench_paths;
  std::string bench_method = "both", bench_out = "bench_records.csv", bench_cells;
  std::vector<int> bench_p;
  int bench_trials = 40;
  CommonOpts bench_common;
  bool no_cache = false;
  bench->add_option("paths", bench_paths, "hMetis .hgr files")->required();
  bench->add_option("--method", bench_method, "rnhc | spectral | both")->capture_default_str();
  bench->add_option("--p", bench_p, "Cluster counts (default 2..8)")->delimiter(',');
  bench->add_option("--trials", bench_trials, "Trials per cell")->capture_default_str();
  add_common(bench, bench_common);
  bench->add_flag("--no-cache-embedding", no_cache,
                  "Recompute spectral eigenvectors in every trial");
  bench->add_option("--out", bench_out, "Records CSV path")->capture_default_str();
  bench->add_option("--cells-out", bench_cells, "Per-cell summary CSV path");

  CLI11_PARSE(app, argc, argv);

  if (info->parsed()) return cmd_info(info_path, info_manifest);
  if (eval->parsed()) return cmd_eval(eval_path, eval_labels, eval_p, eval_csv);
  if (part->parsed()) {
    std::optional<bool> row_normalize;
    if (rn_on) row_normalize = true;
    if (rn_off) row_normalize = false;
    return cmd_partition(part_path, part_method, part_p, part_common, row_normalize, part_out,
                         part_trace, part_csv);
  }
  if (bench->parsed())
    return cmd_bench(bench_paths, bench_method, bench_p, bench_trials, bench_common, !no_cache,
                     bench_out, bench_cells);
  return 1;
}
