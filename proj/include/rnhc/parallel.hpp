#pragma once

namespace rnhc {

// Serial kernels are the reference implementations. Parallel kernels are the
// OpenMP variants and produce bitwise-identical results (each output slot is
// accumulated in the same order in both modes). Timing mode always runs
// Serial on one thread.
enum class ExecPolicy { Serial, Parallel };

namespace threading {

// Pins OpenMP and Eigen to a single thread for timing runs.
void force_single_thread();

// Widest team observed inside any rnhc parallel region since the last reset;
// 0 means no parallel region ran at all.
void reset_observed_threads();
int observed_threads();
void note_parallel_region();

}  // namespace threading

}  // namespace rnhc
