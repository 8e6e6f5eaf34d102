#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "quesadilla/ordering.hpp"

namespace quesadilla {

// A sparse tensor stored as a list of coordinates: N rows of `rank` 32-bit
// indices (row-major, 0-based) with one 64-bit value per row. Duplicate
// coordinate rows are allowed; all sorts in this library are stable, so
// duplicates behave deterministically.
struct CooTensor {
  std::vector<std::uint32_t> dims;    // rank entries, each >= 1
  std::vector<std::uint32_t> coords;  // nnz * rank entries
  std::vector<double> values;         // nnz entries

  Mode rank() const { return static_cast<Mode>(dims.size()); }
  std::size_t nnz() const { return values.size(); }

  std::uint32_t coord(std::size_t row, Mode mode) const {
    return coords[row * dims.size() + mode];
  }
  std::uint32_t& coord(std::size_t row, Mode mode) {
    return coords[row * dims.size() + mode];
  }
  std::span<const std::uint32_t> row(std::size_t i) const {
    return {coords.data() + i * dims.size(), dims.size()};
  }

  // Throws std::invalid_argument if sizes disagree, a dimension is zero, or
  // any coordinate falls outside its dimension.
  void check_valid() const;

  friend bool operator==(const CooTensor&, const CooTensor&) = default;
};

// True iff every adjacent pair of coordinate rows is non-decreasing under the
// lexicographic comparison given by `ord`. Throws std::invalid_argument on a
// rank mismatch. An empty tensor is sorted under any ordering.
bool is_sorted_under(const CooTensor& tensor, const Ordering& ord);

}  // namespace quesadilla
