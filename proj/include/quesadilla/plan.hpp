#pragma once

#include <cstdint>
#include <vector>

#include "quesadilla/ordering.hpp"

namespace quesadilla {

// One partial-sort call: sort on `mode` while preserving the ordering of the
// first `prefix_len` modes of the current ordering. prefix_len == 0 selects
// the plain histogram sort, prefix_len > 0 the bucketed variant.
struct PlanStep {
  Mode prefix_len = 0;
  Mode mode = 0;

  bool bucketed() const { return prefix_len > 0; }

  friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

// The ordering a tensor is sorted under after one partial sort. If the
// current ordering is (t1..tl, ..., mode, ...), the result is
// (t1..tl, mode, <everything between, in order>, <everything after>).
// Throws std::invalid_argument if step.mode lies inside the prefix.
Ordering apply_transition(const Ordering& current, const PlanStep& step);

// A sequence of partial sorts taking a simply ordered tensor to `target`.
struct SortPlan {
  Ordering target;
  std::vector<PlanStep> steps;
};

// Runs `plan`'s transitions from the simple ordering; useful for checking
// that a plan actually lands on its target.
Ordering simulate_plan(const SortPlan& plan);

}  // namespace quesadilla
