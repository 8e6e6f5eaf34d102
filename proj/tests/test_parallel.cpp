#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <random>
#include <span>
#include <stdexcept>
#include <thread>

#include "quesadilla/parallel.hpp"
#include "quesadilla/transpose.hpp"
#include "test_util.hpp"

using namespace quesadilla;
using testutil::make_tensor;

namespace {

TransposeOptions with_workers(unsigned p,
                              ParallelConfig::Schedule sched =
                                  ParallelConfig::Schedule::Dynamic) {
  TransposeOptions opts;
  opts.parallel.workers = p;
  opts.parallel.bucket_schedule = sched;
  return opts;
}

}  // namespace

TEST_CASE("zero workers are rejected") {
  CooTensor t = make_tensor({2, 2}, {{0, 1}});
  Workspace ws;
  CHECK_THROWS_AS(parallel_partial_sort(t, {}, 0, ws, ParallelConfig{0, {}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      parallel_topk_bucket_sort(t, 1, Ordering({0, 1}), ParallelConfig{0, {}}),
      std::invalid_argument);
}

TEST_CASE("one worker takes the serial path") {
  CooTensor serial = testutil::golden_input();
  CooTensor parallel = serial;
  Workspace ws1, ws2;
  const std::vector<Mode> prefix{0, 1};
  partial_sort(serial, prefix, 3, ws1);
  parallel_partial_sort(parallel, prefix, 3, ws2, ParallelConfig::serial());
  CHECK(parallel == serial);
}

TEST_CASE("golden example under several worker counts") {
  for (unsigned p : {2u, 3u, 4u}) {
    CAPTURE(p);
    CooTensor t = testutil::golden_input();
    Workspace ws;
    const std::vector<Mode> prefix{0, 1};
    parallel_partial_sort(t, prefix, 3, ws, ParallelConfig::with_workers(p));
    CHECK(t == testutil::golden_output());
  }
}

TEST_CASE("parallel partial sorts reproduce the serial output bit for bit") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 60; ++i) {
    const Mode r = 2 + static_cast<Mode>(rng() % 4);
    const CooTensor input = testutil::random_tensor(r, rng(), 1500, 12);

    // Drive both serial and parallel through an actual plan so the bucketed
    // path sees realistic prefixes.
    const Ordering target = testutil::random_ordering(r, rng);
    const SortPlan plan = quesadilla_plan(target);

    CooTensor serial = input;
    Workspace ws;
    for (const PlanStep& step : plan.steps) {
      const std::span<const Mode> prefix{target.modes().data(),
                                         step.prefix_len};
      partial_sort(serial, prefix, step.mode, ws);
    }

    for (unsigned p : {2u, 4u, 8u}) {
      CAPTURE(p);
      CooTensor parallel = input;
      Workspace pws;
      for (const PlanStep& step : plan.steps) {
        const std::span<const Mode> prefix{target.modes().data(),
                                           step.prefix_len};
        parallel_partial_sort(parallel, prefix, step.mode, pws,
                              ParallelConfig::with_workers(p));
      }
      CHECK(parallel == serial);
    }
  }
}

TEST_CASE("more workers than rows is harmless") {
  CooTensor t = make_tensor({4, 4}, {{3, 1}, {3, 2}}, {1, 2});
  Workspace ws;
  parallel_partial_sort(t, {}, 1, ws, ParallelConfig::with_workers(16));
  CHECK(t == make_tensor({4, 4}, {{3, 1}, {3, 2}}, {1, 2}));
}

TEST_CASE("rows never escape their bucket in a bucketed pass") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 20; ++i) {
    const CooTensor input = testutil::random_tensor(3, rng(), 800, 4);
    const std::vector<Mode> prefix{0};
    const auto starts = detail::bucket_starts(input, prefix, 0, input.nnz());

    CooTensor sorted = input;
    Workspace ws;
    parallel_partial_sort(sorted, prefix, 2, ws,
                          ParallelConfig::with_workers(4));

    for (std::size_t b = 0; b < starts.size(); ++b) {
      const std::size_t s = starts[b];
      const std::size_t e =
          b + 1 < starts.size() ? starts[b + 1] : input.nnz();
      // Same bucket key and same value multiset within the bucket range.
      std::vector<double> in_vals(input.values.begin() + s,
                                  input.values.begin() + e);
      std::vector<double> out_vals(sorted.values.begin() + s,
                                   sorted.values.begin() + e);
      std::sort(in_vals.begin(), in_vals.end());
      std::sort(out_vals.begin(), out_vals.end());
      CHECK(in_vals == out_vals);
      for (std::size_t j = s; j < e; ++j) {
        CHECK(sorted.coord(j, 0) == input.coord(s, 0));
      }
    }
  }
}

TEST_CASE("one giant bucket swallows most workers") {
  // Every row shares the prefix coordinate, so worker 0 owns the whole range
  // and the others get empty regions.
  std::mt19937_64 rng(12);
  CooTensor t;
  t.dims = {1, 40, 40};
  const std::size_t n = 5000;
  for (std::size_t j = 0; j < n; ++j) {
    t.coords.push_back(0);
    t.coords.push_back(static_cast<std::uint32_t>(rng() % 40));
    t.coords.push_back(static_cast<std::uint32_t>(rng() % 40));
    t.values.push_back(static_cast<double>(j));
  }
  const std::vector<Mode> prefix{0};

  CooTensor serial = t;
  Workspace ws;
  partial_sort(serial, prefix, 2, ws);
  for (unsigned p : {2u, 8u}) {
    CooTensor parallel = t;
    Workspace pws;
    parallel_partial_sort(parallel, prefix, 2, pws,
                          ParallelConfig::with_workers(p));
    CHECK(parallel == serial);
  }
}

TEST_CASE("duplicate-heavy tensors stay deterministic in parallel") {
  quesadilla::GenSpec spec;
  spec.dims = {2, 2, 3};
  spec.nnz = 1000;  // every coordinate occurs ~80 times
  spec.seed = 5;
  const CooTensor t = generate(spec);
  for (const Ordering& target : all_orderings(3)) {
    const CooTensor expect = comparison_transpose(t, target);
    for (unsigned p : {2u, 5u}) {
      TransposeOptions opts;
      opts.parallel.workers = p;
      CHECK(transpose(t, target, SortStrategy::quesadilla(), opts) == expect);
      CHECK(transpose(t, target, SortStrategy::top_k(2), opts) == expect);
    }
  }
}

TEST_CASE("odd worker counts on a larger tensor") {
  quesadilla::GenSpec spec;
  spec.dims = {50, 30, 70};
  spec.nnz = 100000;
  spec.seed = 17;
  const CooTensor t = generate(spec);
  const Ordering target({1, 2, 0});
  const CooTensor expect = comparison_transpose(t, target);
  for (unsigned p : {3u, 7u}) {
    TransposeOptions opts;
    opts.parallel.workers = p;
    CHECK(transpose(t, target, SortStrategy::quesadilla(), opts) == expect);
    CHECK(transpose(t, target, SortStrategy::full_radix(), opts) == expect);
  }
}

TEST_CASE("top-k bucket phase: degenerate bucket shapes") {
  SUBCASE("one bucket holding every row") {
    // All rows share the leading coordinate, so one worker gets all of it.
    CooTensor t = make_tensor(
        {2, 5}, {{0, 4}, {0, 2}, {0, 3}, {0, 0}}, {1, 2, 3, 4});
    CooTensor serial = t;
    parallel_topk_bucket_sort(serial, 1, Ordering({0, 1}),
                              ParallelConfig::serial());
    CooTensor parallel = t;
    parallel_topk_bucket_sort(parallel, 1, Ordering({0, 1}),
                              ParallelConfig::with_workers(4));
    CHECK(parallel == serial);
    CHECK(is_sorted_under(serial, Ordering({0, 1})));
  }
  SUBCASE("every bucket is a single row") {
    CooTensor t = make_tensor({4, 2}, {{0, 1}, {1, 0}, {2, 1}, {3, 0}});
    const CooTensor before = t;
    parallel_topk_bucket_sort(t, 1, Ordering({0, 1}),
                              ParallelConfig::with_workers(3));
    CHECK(t == before);
  }
}

TEST_CASE("both bucket schedules match the serial top-k phase") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 30; ++i) {
    const Mode r = 3 + static_cast<Mode>(rng() % 2);
    const CooTensor input = testutil::random_tensor(r, rng(), 1200, 6);
    const Ordering target = testutil::random_ordering(r, rng);
    const Mode k = 1 + static_cast<Mode>(rng() % r);
    const CooTensor expect = topk_transpose(input, target, k);
    for (auto sched : {ParallelConfig::Schedule::Dynamic,
                       ParallelConfig::Schedule::Guided}) {
      for (unsigned p : {2u, 4u}) {
        CHECK(topk_transpose(input, target, k, with_workers(p, sched)) ==
              expect);
      }
    }
  }
}

TEST_CASE("full transposes with parallel passes equal serial transposes") {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 25; ++i) {
    const Mode r = 2 + static_cast<Mode>(rng() % 4);
    const CooTensor input = testutil::random_tensor(r, rng(), 1000, 10);
    const Ordering target = testutil::random_ordering(r, rng);
    const CooTensor expect = comparison_transpose(input, target);
    for (unsigned p : {2u, 4u}) {
      CHECK(transpose(input, target, SortStrategy::quesadilla(),
                      with_workers(p)) == expect);
      CHECK(transpose(input, target, SortStrategy::full_radix(),
                      with_workers(p)) == expect);
    }
  }
}

TEST_CASE("parallel speedup on a large tensor" *
          doctest::skip(std::thread::hardware_concurrency() < 4)) {
  // Soft scaling check; only meaningful with real hardware parallelism.
  quesadilla::GenSpec spec;
  spec.dims = {2000, 2000, 50};
  spec.nnz = 10'000'000;
  spec.seed = 3;
  const CooTensor input = generate(spec);

  auto time_sort = [&](unsigned workers) {
    CooTensor t = input;
    Workspace ws;
    const auto t0 = std::chrono::steady_clock::now();
    parallel_partial_sort(t, {}, 2, ws, ParallelConfig::with_workers(workers));
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
  };

  const double serial = time_sort(1);
  const double parallel = time_sort(4);
  CHECK(parallel < serial);
}
