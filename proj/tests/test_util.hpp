#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "quesadilla/coo.hpp"
#include "quesadilla/io.hpp"
#include "quesadilla/ordering.hpp"

namespace testutil {

using quesadilla::CooTensor;
using quesadilla::Mode;
using quesadilla::Ordering;

inline CooTensor make_tensor(std::vector<std::uint32_t> dims,
                             std::vector<std::vector<std::uint32_t>> rows,
                             std::vector<double> values = {}) {
  CooTensor t;
  t.dims = std::move(dims);
  if (values.empty()) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      values.push_back(static_cast<double>(j + 1));
    }
  }
  for (const auto& row : rows) {
    t.coords.insert(t.coords.end(), row.begin(), row.end());
  }
  t.values = std::move(values);
  t.check_valid();
  return t;
}

// The worked four-mode example: ten rows written as 4-digit numbers, sorted
// under the simple ordering. Digits here are 1-based; stored 0-based.
inline CooTensor golden_input() {
  auto digits = [](int v) {
    return std::vector<std::uint32_t>{
        static_cast<std::uint32_t>(v / 1000 % 10 - 1),
        static_cast<std::uint32_t>(v / 100 % 10 - 1),
        static_cast<std::uint32_t>(v / 10 % 10 - 1),
        static_cast<std::uint32_t>(v % 10 - 1)};
  };
  std::vector<std::vector<std::uint32_t>> rows;
  for (int v : {1218, 1224, 1274, 1421, 1437, 1456, 1472, 3216, 3283, 3286}) {
    rows.push_back(digits(v));
  }
  return make_tensor({9, 9, 9, 9}, rows);
}

// golden_input() transposed to the (1,2,4,3) ordering (0-based (0,1,3,2)),
// with values tracking their rows.
inline CooTensor golden_output() {
  auto digits = [](int v) {
    return std::vector<std::uint32_t>{
        static_cast<std::uint32_t>(v / 1000 % 10 - 1),
        static_cast<std::uint32_t>(v / 100 % 10 - 1),
        static_cast<std::uint32_t>(v / 10 % 10 - 1),
        static_cast<std::uint32_t>(v % 10 - 1)};
  };
  std::vector<std::vector<std::uint32_t>> rows;
  for (int v : {1224, 1274, 1218, 1421, 1472, 1456, 1437, 3283, 3216, 3286}) {
    rows.push_back(digits(v));
  }
  return make_tensor({9, 9, 9, 9}, rows,
                     {2, 3, 1, 4, 7, 6, 5, 9, 8, 10});
}

inline Ordering golden_target() { return Ordering({0, 1, 3, 2}); }

inline Ordering random_ordering(Mode rank, std::mt19937_64& rng) {
  std::vector<Mode> modes(rank);
  for (Mode i = 0; i < rank; ++i) modes[i] = i;
  for (Mode i = rank; i > 1; --i) {
    std::swap(modes[i - 1], modes[rng() % i]);
  }
  return Ordering(std::move(modes));
}

// Small random tensor, canonically sorted, deterministic in `seed`.
inline CooTensor random_tensor(Mode rank, std::uint64_t seed,
                               std::size_t max_nnz = 2000,
                               std::uint32_t max_dim = 16) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  quesadilla::GenSpec spec;
  for (Mode m = 0; m < rank; ++m) {
    spec.dims.push_back(1 + static_cast<std::uint32_t>(rng() % max_dim));
  }
  spec.nnz = 1 + static_cast<std::size_t>(rng() % max_nnz);
  spec.seed = seed;
  return quesadilla::generate(spec);
}

}  // namespace testutil
