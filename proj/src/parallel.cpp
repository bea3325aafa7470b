#include "rnhc/parallel.hpp"

#include <atomic>

#include <Eigen/Core>
#include <omp.h>

namespace rnhc::threading {

namespace {
std::atomic<int> g_observed{0};
}

void force_single_thread() {
  omp_set_num_threads(1);
  Eigen::setNbThreads(1);
}

void reset_observed_threads() { g_observed.store(0, std::memory_order_relaxed); }

int observed_threads() { return g_observed.load(std::memory_order_relaxed); }

void note_parallel_region() {
  const int team = omp_get_num_threads();
  int seen = g_observed.load(std::memory_order_relaxed);
  while (team > seen &&
         !g_observed.compare_exchange_weak(seen, team, std::memory_order_relaxed)) {
  }
}

}  // namespace rnhc::threading
