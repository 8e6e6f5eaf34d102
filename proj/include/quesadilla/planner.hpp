#pragma once

#include <map>
#include <vector>

#include "quesadilla/ordering.hpp"
#include "quesadilla/plan.hpp"

namespace quesadilla {

// The set of modes that appear after mode `p` in `ord`.
// Throws std::invalid_argument if p is not in ord.
ModeSet follow_set(const Ordering& ord, Mode p);

// Lower bound on the number of partial sorts needed to reorder a tensor from
// `source` order to `target` order: the number of modes whose target follow
// set is not contained in their source follow set. It is also tight — the
// planner always emits exactly this many steps.
int required_sort_count(const Ordering& source, const Ordering& target);

// Pass-minimizing plan taking a simply ordered tensor to `target`. Among all
// minimum-length plans, it also uses the fewest bucketed sorts.
SortPlan quesadilla_plan(const Ordering& target);

// Truncated plan that only guarantees the output ordering starts with the
// first `prefix_len` modes of `target` (1 <= prefix_len <= rank). With
// prefix_len == rank this is exactly quesadilla_plan. The Top-K strategy
// finishes the remaining modes with per-bucket comparison sorts.
SortPlan prefix_plan(const Ordering& target, Mode prefix_len);

struct PlanCost {
  int total_passes = 0;
  int bucketed_passes = 0;

  friend bool operator==(const PlanCost&, const PlanCost&) = default;
};

PlanCost plan_cost(const SortPlan& plan);

// Exhaustive oracle: relaxes lexicographic (total, bucketed) costs over the
// graph of all r! orderings, where edges are every legal partial sort
// (0 <= prefix_len < position of the sorted mode). Intended for testing the
// planner's optimality; throws std::invalid_argument for rank > 6.
PlanCost min_plan_bruteforce(const Ordering& target);

// For each of the rank! target orderings, tallies how many partial sorts the
// planner needs: map from pass count to number of orderings.
// Requires 2 <= rank <= 6.
std::map<int, long long> pass_histogram(Mode rank);

// Reduces planning from an arbitrary source ordering to the simple-source
// case: a tensor sorted under `source` is simply ordered once modes are
// renamed through source's inverse, and `target` becomes the returned
// ordering (position of each target mode within source).
Ordering relabel_target(const Ordering& source, const Ordering& target);

}  // namespace quesadilla
