#include "rnhc/bench_harness.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rnhc {

const char* to_string(Method method) {
  return method == Method::Rnhc ? "rnhc" : "spectral";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "rnhc") return Method::Rnhc;
  if (name == "spectral") return Method::Spectral;
  return std::nullopt;
}

void TrialPlan::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (p_values.empty()) throw std::invalid_argument("at least one p value required");
  for (int p : p_values)
    if (p < 2) throw std::invalid_argument("bench p values must be >= 2");
  if (methods.empty()) throw std::invalid_argument("at least one method required");
  optimizer.validate();
}

BenchRecord run_trial(const BenchDataset& dataset, Method method, int p, std::uint64_t seed,
                      const TrialPlan& plan, Partition* out_partition,
                      const SpectralEmbedding* cached) {
  using clock = std::chrono::steady_clock;
  BenchRecord record;
  record.dataset = dataset.name;
  record.method = method;
  record.p = p;
  record.seed = seed;

  OptimizerConfig opt = plan.optimizer;
  opt.rng_seed = seed;
  KMeansConfig km = plan.kmeans;
  km.rng_seed = seed;
  km.k = p;
  km.policy = opt.policy;
  SpectralOptions spectral = plan.spectral;
  spectral.policy = opt.policy;

  const auto t0 = clock::now();
  try {
    if (method == Method::Rnhc) {
      RnhcResult result = rnhc(dataset.hypergraph, p, opt, km);
      record.iters = static_cast<int>(result.trace.iterations.size());
      record.failed = result.failed;
      if (!result.failed) {
        record.nhcut = result.report.nhcut;
        record.hcut = result.report.hcut;
        record.approx_nhcut = result.report.approx_nhcut;
        if (out_partition) *out_partition = result.partition;
      }
    } else {
      SpectralResult result =
          cached ? spectral_partition_from_embedding(dataset.hypergraph, *cached, p, km, spectral)
                 : spectral_partition(dataset.hypergraph, p, km, spectral);
      record.failed = result.failed;
      if (!result.failed) {
        record.nhcut = result.report.nhcut;
        record.hcut = result.report.hcut;
        record.approx_nhcut = result.report.approx_nhcut;
        if (out_partition) *out_partition = result.partition;
      }
    }
  } catch (const std::exception&) {
    record.failed = true;
  }
  record.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  return record;
}

namespace {

CellSummary summarize(const std::vector<BenchRecord>& records, std::size_t begin, std::size_t end,
                      double extra_ms) {
  CellSummary cell;
  cell.dataset = records[begin].dataset;
  cell.method = records[begin].method;
  cell.p = records[begin].p;
  cell.trials = static_cast<int>(end - begin);
  cell.total_ms = extra_ms;

  std::vector<double> values;
  for (std::size_t i = begin; i < end; ++i) {
    const BenchRecord& r = records[i];
    cell.total_ms += r.wall_ms;
    if (r.failed || !r.nhcut) {
      ++cell.failures;
      continue;
    }
    values.push_back(*r.nhcut);
    if (!cell.best_nhcut || *r.nhcut < *cell.best_nhcut) {
      cell.best_nhcut = *r.nhcut;
      cell.best_seed = r.seed;
    }
  }
  if (!values.empty()) {
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    cell.median_nhcut =
        values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  }
  return cell;
}

}  // namespace

BenchResult run_bench(const std::vector<BenchDataset>& datasets, const TrialPlan& plan) {
  plan.validate();
  TrialPlan effective = plan;
  if (plan.single_thread) {
    threading::force_single_thread();
    effective.optimizer.policy = ExecPolicy::Serial;
  } else if (plan.trials > 1) {
    // Parallelism goes across trials; kernels stay serial inside each trial.
    effective.optimizer.policy = ExecPolicy::Serial;
  }

  BenchResult result;
  for (const BenchDataset& dataset : datasets) {
    for (Method method : plan.methods) {
      for (int p : plan.p_values) {
        double cache_ms = 0.0;
        SpectralEmbedding cached;
        bool have_cache = false;
        if (method == Method::Spectral && plan.cache_embedding) {
          const auto t0 = std::chrono::steady_clock::now();
          try {
            SpectralOptions spectral = effective.spectral;
            spectral.policy = effective.optimizer.policy;
            const ExpandedGraph graph(dataset.hypergraph);
            cached = smallest_eigenvectors(graph, p, spectral);
            have_cache = true;
          } catch (const std::exception&) {
            have_cache = false;  // fall back to per-trial solves
          }
          cache_ms =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                  .count();
        }

        std::vector<BenchRecord> cell_records(plan.trials);
        const SpectralEmbedding* cache_ptr = have_cache ? &cached : nullptr;
        if (plan.single_thread || plan.trials == 1) {
          for (int i = 0; i < plan.trials; ++i)
            cell_records[i] =
                run_trial(dataset, method, p, plan.base_seed + i, effective, nullptr, cache_ptr);
        } else {
#pragma omp parallel
          {
            threading::note_parallel_region();
#pragma omp for schedule(dynamic)
            for (int i = 0; i < plan.trials; ++i)
              cell_records[i] =
                  run_trial(dataset, method, p, plan.base_seed + i, effective, nullptr, cache_ptr);
          }
        }

        const std::size_t begin = result.records.size();
        result.records.insert(result.records.end(),
                              std::make_move_iterator(cell_records.begin()),
                              std::make_move_iterator(cell_records.end()));
        result.cells.push_back(summarize(result.records, begin, result.records.size(), cache_ms));
      }
    }
  }
  return result;
}

namespace {

std::string format_double(double value) {
  std::ostringstream out;
  out << std::setprecision(17) << value;
  return out.str();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream iss(line);
  while (std::getline(iss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

void write_records_csv(const std::vector<BenchRecord>& records, std::ostream& out) {
  out << "dataset,method,p,seed,nhcut,hcut,approx_nhcut,wall_ms,iters,failed\n";
  for (const BenchRecord& r : records) {
    out << r.dataset << ',' << to_string(r.method) << ',' << r.p << ',' << r.seed << ',';
    if (r.nhcut) out << format_double(*r.nhcut);
    out << ',';
    if (r.hcut) out << *r.hcut;
    out << ',';
    if (r.approx_nhcut) out << format_double(*r.approx_nhcut);
    out << ',' << format_double(r.wall_ms) << ',' << r.iters << ',' << (r.failed ? 1 : 0) << '\n';
  }
}

std::vector<BenchRecord> read_records_csv(std::istream& in) {
  std::vector<BenchRecord> records;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != 10) throw std::runtime_error("bad bench CSV row: " + line);
    BenchRecord r;
    r.dataset = fields[0];
    const auto method = parse_method(fields[1]);
    if (!method) throw std::runtime_error("bad method in CSV row: " + line);
    r.method = *method;
    r.p = std::stoi(fields[2]);
    r.seed = std::stoull(fields[3]);
    if (!fields[4].empty()) r.nhcut = std::stod(fields[4]);
    if (!fields[5].empty()) r.hcut = std::stoll(fields[5]);
    if (!fields[6].empty()) r.approx_nhcut = std::stod(fields[6]);
    r.wall_ms = std::stod(fields[7]);
    r.iters = std::stoi(fields[8]);
    r.failed = fields[9] == "1";
    records.push_back(std::move(r));
  }
  return records;
}

void write_cells_csv(const std::vector<CellSummary>& cells, std::ostream& out) {
  out << "dataset,method,p,trials,failures,best_nhcut,best_seed,median_nhcut,total_ms\n";
  for (const CellSummary& c : cells) {
    out << c.dataset << ',' << to_string(c.method) << ',' << c.p << ',' << c.trials << ','
        << c.failures << ',';
    if (c.best_nhcut) out << format_double(*c.best_nhcut);
    out << ',';
    if (c.best_seed) out << *c.best_seed;
    out << ',';
    if (c.median_nhcut) out << format_double(*c.median_nhcut);
    out << ',' << format_double(c.total_ms) << '\n';
  }
}

void print_cells(const std::vector<CellSummary>& cells, std::ostream& out) {
  out << std::left << std::setw(12) << "dataset" << std::setw(10) << "method" << std::setw(4)
      << "p" << std::setw(8) << "trials" << std::setw(6) << "fail" << std::setw(16) << "best"
      << std::setw(16) << "median" << "total_ms\n";
  for (const CellSummary& c : cells) {
    out << std::left << std::setw(12) << c.dataset << std::setw(10) << to_string(c.method)
        << std::setw(4) << c.p << std::setw(8) << c.trials << std::setw(6) << c.failures;
    std::ostringstream best, median;
    if (c.best_nhcut)
      best << std::setprecision(6) << *c.best_nhcut;
    else
      best << "N/A";
    if (c.median_nhcut)
      median << std::setprecision(6) << *c.median_nhcut;
    else
      median << "N/A";
    out << std::setw(16) << best.str() << std::setw(16) << median.str() << std::fixed
        << std::setprecision(1) << c.total_ms << '\n';
    out.unsetf(std::ios_base::floatfield);
  }
}

}  // namespace rnhc
