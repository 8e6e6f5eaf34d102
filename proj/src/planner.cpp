#include "quesadilla/planner.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace quesadilla {

ModeSet follow_set(const Ordering& ord, Mode p) {
  const std::size_t pos = ord.position_of(p);
  ModeSet out;
  for (std::size_t i = pos + 1; i < ord.rank(); ++i) out.insert(ord.at(i));
  return out;
}

int required_sort_count(const Ordering& source, const Ordering& target) {
  if (source.rank() != target.rank()) {
    throw std::invalid_argument("source and target ranks differ");
  }
  int count = 0;
  for (Mode p : target) {
    if (!follow_set(target, p).subset_of(follow_set(source, p))) ++count;
  }
  return count;
}

namespace {

// Shared planner loop. Scans for the longest run of target modes that still
// need their own sort, emits those sorts lowest-priority first (so each lands
// just after the established prefix), and repeats with the grown prefix.
// Positions beyond `want` never get their own sort: once the prefix covers
// `want` modes the remaining guarantee is not needed.
SortPlan plan_to_prefix(const Ordering& target, Mode want) {
  const Mode r = target.rank();
  const Ordering simple = Ordering::simple(r);
  std::vector<PlanStep> steps;
  Mode l = 0;
  while (l < want) {
    Mode k = l;
    while (k + 1 < r &&
           !follow_set(target, target.at(k))
                .subset_of(follow_set(simple, target.at(k)))) {
      ++k;
    }
    const Mode next_l = k + 1;
    for (Mode j = std::min(k, want); j > l; --j) {
      steps.push_back(PlanStep{l, target.at(j - 1)});
    }
    l = next_l;
  }
  return SortPlan{target, std::move(steps)};
}

}  // namespace

SortPlan quesadilla_plan(const Ordering& target) {
  return plan_to_prefix(target, target.rank());
}

SortPlan prefix_plan(const Ordering& target, Mode prefix_len) {
  if (prefix_len < 1 || prefix_len > target.rank()) {
    throw std::invalid_argument("prefix length must be in 1..rank");
  }
  return plan_to_prefix(target, prefix_len);
}

PlanCost plan_cost(const SortPlan& plan) {
  PlanCost cost;
  cost.total_passes = static_cast<int>(plan.steps.size());
  for (const PlanStep& s : plan.steps) {
    if (s.bucketed()) ++cost.bucketed_passes;
  }
  return cost;
}

namespace {

std::uint64_t pack(const Ordering& ord) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < ord.rank(); ++i) {
    key |= std::uint64_t{ord.at(i)} << (4 * i);
  }
  return key;
}

using Cost = std::pair<int, int>;  // (total, bucketed), compared lexically

}  // namespace

PlanCost min_plan_bruteforce(const Ordering& target) {
  const Mode r = target.rank();
  if (r > 6) {
    throw std::invalid_argument(
        "bruteforce oracle supports rank <= 6 (state space is rank!)");
  }
  const std::vector<Ordering> nodes = all_orderings(r);
  std::unordered_map<std::uint64_t, std::size_t> index;
  index.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(pack(nodes[i]), i);

  constexpr Cost kUnreached{std::numeric_limits<int>::max(),
                            std::numeric_limits<int>::max()};
  std::vector<Cost> dist(nodes.size(), kUnreached);
  dist[index.at(pack(Ordering::simple(r)))] = {0, 0};

  // Edge weights are (1, 0/1) and costs add componentwise, so lexicographic
  // relaxation converges to the true minimum.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t u = 0; u < nodes.size(); ++u) {
      if (dist[u] == kUnreached) continue;
      const Ordering& ord = nodes[u];
      for (std::size_t pos = 1; pos < r; ++pos) {
        const Mode mode = ord.at(pos);
        for (Mode l = 0; l < pos; ++l) {
          const Ordering next = apply_transition(ord, PlanStep{l, mode});
          const std::size_t v = index.at(pack(next));
          const Cost cand{dist[u].first + 1, dist[u].second + (l > 0 ? 1 : 0)};
          if (cand < dist[v]) {
            dist[v] = cand;
            changed = true;
          }
        }
      }
    }
  }

  const Cost best = dist[index.at(pack(target))];
  return PlanCost{best.first, best.second};
}

std::map<int, long long> pass_histogram(Mode rank) {
  if (rank < 2 || rank > 6) {
    throw std::invalid_argument("pass_histogram supports rank 2..6");
  }
  std::map<int, long long> hist;
  for (const Ordering& target : all_orderings(rank)) {
    ++hist[static_cast<int>(quesadilla_plan(target).steps.size())];
  }
  return hist;
}

Ordering relabel_target(const Ordering& source, const Ordering& target) {
  if (source.rank() != target.rank()) {
    throw std::invalid_argument("source and target ranks differ");
  }
  std::vector<Mode> out;
  out.reserve(target.rank());
  for (Mode m : target) {
    out.push_back(static_cast<Mode>(source.position_of(m)));
  }
  return Ordering(std::move(out));
}

}  // namespace quesadilla
