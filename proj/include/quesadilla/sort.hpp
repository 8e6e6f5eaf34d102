#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "quesadilla/coo.hpp"

namespace quesadilla {

// Reusable buffers for the histogram sorts. One workspace serves any number
// of sequential passes; it must not be shared across concurrent calls.
struct Workspace {
  std::vector<std::uint32_t> count;       // dims[mode] + 1 entries per pass
  std::vector<std::uint32_t> bucket;      // nnz entries (bucketed passes)
  std::vector<std::uint32_t> pos;         // nnz entries (bucketed passes)
  std::vector<std::uint32_t> perm;        // nnz entries (bucketed passes)
  std::vector<std::uint32_t> coords_out;  // nnz * rank scratch
  std::vector<double> values_out;         // nnz scratch
};

// One stable histogram pass, in place: sorts `tensor` on `mode` while
// preserving the relative order of rows that agree on `prefix` (the first
// modes of the ordering the tensor is currently sorted under). An empty
// prefix is a plain counting sort. Values move in lockstep with coordinates.
//
// Requires the tensor to be sorted under some complete ordering whose first
// prefix.size() modes are exactly `prefix`; this precondition is only checked
// in debug builds. Throws std::invalid_argument if `mode` appears in
// `prefix`, and std::out_of_range if a coordinate exceeds its dimension.
void partial_sort(CooTensor& tensor, std::span<const Mode> prefix, Mode mode,
                  Workspace& ws);

// Stable comparison sort of rows [row_begin, row_end) keyed by `key_modes`
// in priority order. This is the oracle path: it goes through
// std::stable_sort and never touches the histogram kernels.
void sort_rows_by(CooTensor& tensor, std::size_t row_begin,
                  std::size_t row_end, std::span<const Mode> key_modes);

namespace detail {

bool rows_equal_on(const CooTensor& t, std::size_t a, std::size_t b,
                   std::span<const Mode> modes);

// count[key + 1] += 1 for every row in [row_begin, row_end). `count` must
// hold dims[mode] + 1 zero-initialized entries; throws std::out_of_range on
// a coordinate >= dims[mode].
void count_keys(const CooTensor& t, Mode mode, std::size_t row_begin,
                std::size_t row_end, std::span<std::uint32_t> count);

// Stable scatter of rows [row_begin, row_end) into the output buffers at
// absolute positions next_pos[key]++ .
void scatter_rows(const CooTensor& t, Mode mode, std::size_t row_begin,
                  std::size_t row_end, std::uint32_t* next_pos,
                  std::uint32_t* out_coords, double* out_values);

// The bucketed histogram sort on rows [row_begin, row_end), writing the same
// row range of the output buffers. Buckets are maximal runs agreeing on
// `prefix`; rows never leave their bucket, which is what makes this kernel
// safe to run independently on disjoint bucket-aligned ranges.
// `count` needs dims[mode] + 1 zeroed entries; bucket/pos/perm need
// row_end - row_begin entries each.
void bucketed_sort_range(const CooTensor& t, std::span<const Mode> prefix,
                         Mode mode, std::size_t row_begin, std::size_t row_end,
                         std::uint32_t* count, std::uint32_t* bucket,
                         std::uint32_t* pos, std::uint32_t* perm,
                         std::uint32_t* out_coords, double* out_values);

// Start indices of the maximal runs of rows in [row_begin, row_end) that
// agree on `modes`; the first entry is row_begin.
std::vector<std::size_t> bucket_starts(const CooTensor& t,
                                       std::span<const Mode> modes,
                                       std::size_t row_begin,
                                       std::size_t row_end);

}  // namespace detail

}  // namespace quesadilla
