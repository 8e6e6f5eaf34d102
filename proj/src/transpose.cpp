#include "quesadilla/transpose.hpp"

#include <charconv>
#include <stdexcept>

namespace quesadilla {

std::string SortStrategy::name() const {
  switch (kind) {
    case Kind::Quesadilla:
      return "quesadilla";
    case Kind::TopK:
      return "top" + std::to_string(k);
    case Kind::FullRadix:
      return "radix";
    case Kind::ComparisonSort:
      return "comparison";
  }
  return "?";
}

SortStrategy parse_strategy(std::string_view name) {
  if (name == "quesadilla") return SortStrategy::quesadilla();
  if (name == "radix") return SortStrategy::full_radix();
  if (name == "comparison" || name == "qsort") {
    return SortStrategy::comparison_sort();
  }
  if (name == "splatt") return SortStrategy::splatt_style();
  if (name.size() > 3 && name.substr(0, 3) == "top") {
    unsigned k = 0;
    const char* first = name.data() + 3;
    const char* last = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(first, last, k);
    if (ec == std::errc{} && ptr == last && k >= 1) {
      return SortStrategy::top_k(static_cast<Mode>(k));
    }
  }
  throw std::invalid_argument("unknown strategy '" + std::string(name) +
                              "' (expected quesadilla, top<K>, radix, "
                              "comparison, splatt or qsort)");
}

PlanCost strategy_pass_cost(const SortStrategy& s, const Ordering& target) {
  switch (s.kind) {
    case SortStrategy::Kind::Quesadilla:
      return plan_cost(quesadilla_plan(target));
    case SortStrategy::Kind::TopK:
      return plan_cost(prefix_plan(target, s.k));
    case SortStrategy::Kind::FullRadix:
      return PlanCost{static_cast<int>(target.rank()), 0};
    case SortStrategy::Kind::ComparisonSort:
      return PlanCost{0, 0};
  }
  return {};
}

namespace {

void run_step(CooTensor& tensor, const Ordering& target, const PlanStep& step,
              Workspace& ws, const TransposeOptions& opts) {
  const std::span<const Mode> prefix{target.modes().data(), step.prefix_len};
  if (opts.parallel.workers != 1) {
    parallel_partial_sort(tensor, prefix, step.mode, ws, opts.parallel);
  } else {
    partial_sort(tensor, prefix, step.mode, ws);
  }
  if (opts.pass_log) opts.pass_log->push_back(step);
}

void run_plan(CooTensor& tensor, const SortPlan& plan, Workspace& ws,
              const TransposeOptions& opts) {
  for (const PlanStep& step : plan.steps) {
    run_step(tensor, plan.target, step, ws, opts);
  }
}

}  // namespace

void transpose_inplace(CooTensor& tensor, const Ordering& target,
                       const SortStrategy& strategy, Workspace& ws,
                       const TransposeOptions& opts) {
  const Mode r = tensor.rank();
  if (target.rank() != r) {
    throw std::invalid_argument("target ordering rank does not match tensor");
  }
  if (opts.verify_input && !is_sorted_under(tensor, Ordering::simple(r))) {
    throw std::invalid_argument(
        "input tensor is not sorted under the simple ordering");
  }

  switch (strategy.kind) {
    case SortStrategy::Kind::Quesadilla:
      run_plan(tensor, quesadilla_plan(target), ws, opts);
      break;
    case SortStrategy::Kind::FullRadix:
      for (Mode j = r; j > 0; --j) {
        run_step(tensor, target, PlanStep{0, target.at(j - 1)}, ws, opts);
      }
      break;
    case SortStrategy::Kind::TopK: {
      if (strategy.k < 1 || strategy.k > r) {
        throw std::invalid_argument("top-K prefix length must be in 1..rank");
      }
      run_plan(tensor, prefix_plan(target, strategy.k), ws, opts);
      parallel_topk_bucket_sort(tensor, strategy.k, target, opts.parallel);
      break;
    }
    case SortStrategy::Kind::ComparisonSort:
      sort_rows_by(tensor, 0, tensor.nnz(), target.modes());
      break;
  }
}

CooTensor transpose(const CooTensor& tensor, const Ordering& target,
                    const SortStrategy& strategy,
                    const TransposeOptions& opts) {
  CooTensor out = tensor;
  Workspace ws;
  transpose_inplace(out, target, strategy, ws, opts);
  return out;
}

CooTensor full_radix_transpose(const CooTensor& tensor, const Ordering& target,
                               const TransposeOptions& opts) {
  return transpose(tensor, target, SortStrategy::full_radix(), opts);
}

CooTensor comparison_transpose(const CooTensor& tensor,
                               const Ordering& target) {
  return transpose(tensor, target, SortStrategy::comparison_sort());
}

CooTensor topk_transpose(const CooTensor& tensor, const Ordering& target,
                         Mode k, const TransposeOptions& opts) {
  return transpose(tensor, target, SortStrategy::top_k(k), opts);
}

}  // namespace quesadilla
