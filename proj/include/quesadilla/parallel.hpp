#pragma once

#include <span>

#include "quesadilla/sort.hpp"

namespace quesadilla {

// Multi-worker execution settings. workers == 1 always takes the serial code
// path; workers == 0 is rejected. The bucket schedule only affects how the
// Top-K comparison phase distributes buckets across workers — buckets are
// disjoint, so both schedules produce output identical to the serial phase.
struct ParallelConfig {
  enum class Schedule { Dynamic, Guided };

  unsigned workers = 1;
  Schedule bucket_schedule = Schedule::Dynamic;

  static ParallelConfig serial() { return {}; }
  static ParallelConfig with_workers(unsigned p) { return {p, {}}; }

  // Hardware thread count, overridable with the QUESADILLA_WORKERS
  // environment variable.
  static unsigned default_workers();
};

// Deterministic parallel partial sort: output bit-identical to the serial
// partial_sort on the same input.
//
// Non-bucketed path: rows split into `workers` contiguous chunks, each worker
// counts into a private histogram, histograms merge via an exclusive scan
// ordered (key, worker) — which is what keeps the scatter stable — and each
// worker scatters its own chunk. Bucketed path: each worker runs the serial
// bucketed kernel on the buckets whose first row falls inside its chunk.
void parallel_partial_sort(CooTensor& tensor, std::span<const Mode> prefix,
                           Mode mode, Workspace& ws,
                           const ParallelConfig& cfg);

// The comparison phase of Top-K: identifies maximal runs of rows agreeing on
// the first `prefix_len` modes of `target` and stable-sorts each run by the
// remaining modes. Requires the tensor to already be prefix-sorted (the
// prefix_plan passes have run). workers == 1 sorts the buckets in order on
// the calling thread; workers > 1 distributes buckets per cfg.bucket_schedule.
void parallel_topk_bucket_sort(CooTensor& tensor, Mode prefix_len,
                               const Ordering& target,
                               const ParallelConfig& cfg);

}  // namespace quesadilla
