#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "quesadilla/coo.hpp"
#include "quesadilla/parallel.hpp"
#include "quesadilla/plan.hpp"
#include "quesadilla/planner.hpp"
#include "quesadilla/sort.hpp"

namespace quesadilla {

// Which transposition algorithm to run. TopK(1) is the SPLATT-style
// strategy: one histogram pass on the leading target mode, then a comparison
// sort per slice.
struct SortStrategy {
  enum class Kind { Quesadilla, TopK, FullRadix, ComparisonSort };

  Kind kind = Kind::Quesadilla;
  Mode k = 0;  // TopK only

  static SortStrategy quesadilla() { return {Kind::Quesadilla, 0}; }
  static SortStrategy top_k(Mode k) { return {Kind::TopK, k}; }
  static SortStrategy splatt_style() { return top_k(1); }
  static SortStrategy full_radix() { return {Kind::FullRadix, 0}; }
  static SortStrategy comparison_sort() { return {Kind::ComparisonSort, 0}; }

  // "quesadilla", "top<K>", "radix", "comparison"
  std::string name() const;

  friend bool operator==(const SortStrategy&, const SortStrategy&) = default;
};

// Accepts the names above plus the aliases "splatt" (top1) and "qsort"
// (comparison). Throws std::invalid_argument on anything else.
SortStrategy parse_strategy(std::string_view name);

// Histogram passes a strategy will execute for `target` (the comparison
// phase of Top-K is not a pass). Useful for benchmark reporting.
PlanCost strategy_pass_cost(const SortStrategy& s, const Ordering& target);

struct TransposeOptions {
  // Check that the input is sorted under the simple ordering and throw
  // std::invalid_argument if not.
  bool verify_input = false;

  // workers == 1 runs everything on the calling thread.
  ParallelConfig parallel = ParallelConfig::serial();

  // When set, every executed partial sort is appended here.
  std::vector<PlanStep>* pass_log = nullptr;
};

// Reorder `tensor` (sorted under the simple ordering) so it is sorted under
// `target`, in place. The (coordinate, value) rows are permuted, never
// altered; every strategy is stable.
void transpose_inplace(CooTensor& tensor, const Ordering& target,
                       const SortStrategy& strategy, Workspace& ws,
                       const TransposeOptions& opts = {});

// Copying convenience wrapper.
CooTensor transpose(const CooTensor& tensor, const Ordering& target,
                    const SortStrategy& strategy,
                    const TransposeOptions& opts = {});

// Exactly rank non-bucketed histogram passes, least-priority target mode
// first — the classic LSD radix sort.
CooTensor full_radix_transpose(const CooTensor& tensor, const Ordering& target,
                               const TransposeOptions& opts = {});

// The stable comparison sort. Serves as the correctness oracle for every
// other strategy and never touches the histogram kernels.
CooTensor comparison_transpose(const CooTensor& tensor, const Ordering& target);

// Histogram-sorts to the first `k` target modes, then comparison-sorts each
// bucket; output is identical to the Quesadilla strategy.
CooTensor topk_transpose(const CooTensor& tensor, const Ordering& target,
                         Mode k, const TransposeOptions& opts = {});

}  // namespace quesadilla
