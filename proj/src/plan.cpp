#include "quesadilla/plan.hpp"

#include <stdexcept>

namespace quesadilla {

Ordering apply_transition(const Ordering& current, const PlanStep& step) {
  const Mode r = current.rank();
  if (step.mode >= r) {
    throw std::invalid_argument("step mode out of range");
  }
  if (step.prefix_len >= r) {
    throw std::invalid_argument("step prefix length out of range");
  }
  const std::size_t pos = current.position_of(step.mode);
  if (pos < step.prefix_len) {
    throw std::invalid_argument("sort mode lies inside the bucketing prefix");
  }
  std::vector<Mode> out;
  out.reserve(r);
  const auto& modes = current.modes();
  out.insert(out.end(), modes.begin(), modes.begin() + step.prefix_len);
  out.push_back(step.mode);
  out.insert(out.end(), modes.begin() + step.prefix_len, modes.begin() + pos);
  out.insert(out.end(), modes.begin() + pos + 1, modes.end());
  return Ordering(std::move(out));
}

Ordering simulate_plan(const SortPlan& plan) {
  Ordering ord = Ordering::simple(plan.target.rank());
  for (const PlanStep& step : plan.steps) {
    ord = apply_transition(ord, step);
  }
  return ord;
}

}  // namespace quesadilla
