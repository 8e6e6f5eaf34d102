#include "quesadilla/sort.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>
#include <string>

namespace quesadilla {

namespace detail {

bool rows_equal_on(const CooTensor& t, std::size_t a, std::size_t b,
                   std::span<const Mode> modes) {
  const std::size_t r = t.rank();
  const std::uint32_t* ra = t.coords.data() + a * r;
  const std::uint32_t* rb = t.coords.data() + b * r;
  for (Mode m : modes) {
    if (ra[m] != rb[m]) return false;
  }
  return true;
}

namespace {

[[noreturn]] void throw_corrupt(std::size_t row, Mode mode) {
  throw std::out_of_range("coordinate in row " + std::to_string(row) +
                          " exceeds the dimension of mode " +
                          std::to_string(mode));
}

#ifndef NDEBUG
// Debug-only check of the partial-sort precondition: the rows must be
// non-decreasing lexicographically on the prefix modes.
bool prefix_sorted(const CooTensor& t, std::span<const Mode> prefix,
                   std::size_t rb, std::size_t re) {
  const std::size_t r = t.rank();
  for (std::size_t j = rb + 1; j < re; ++j) {
    const std::uint32_t* prev = t.coords.data() + (j - 1) * r;
    const std::uint32_t* cur = t.coords.data() + j * r;
    for (Mode m : prefix) {
      if (prev[m] != cur[m]) {
        if (prev[m] > cur[m]) return false;
        break;
      }
    }
  }
  return true;
}
#endif

}  // namespace

void count_keys(const CooTensor& t, Mode mode, std::size_t row_begin,
                std::size_t row_end, std::span<std::uint32_t> count) {
  const std::size_t r = t.rank();
  const std::uint32_t n = static_cast<std::uint32_t>(count.size() - 1);
  const std::uint32_t* crd = t.coords.data();
  for (std::size_t j = row_begin; j < row_end; ++j) {
    const std::uint32_t key = crd[j * r + mode];
    if (key >= n) throw_corrupt(j, mode);
    ++count[key + 1];
  }
}

void scatter_rows(const CooTensor& t, Mode mode, std::size_t row_begin,
                  std::size_t row_end, std::uint32_t* next_pos,
                  std::uint32_t* out_coords, double* out_values) {
  const std::size_t r = t.rank();
  const std::uint32_t* crd = t.coords.data();
  const double* val = t.values.data();
  for (std::size_t j = row_begin; j < row_end; ++j) {
    const std::uint32_t* row = crd + j * r;
    const std::uint32_t p = next_pos[row[mode]]++;
    std::copy_n(row, r, out_coords + std::size_t{p} * r);
    out_values[p] = val[j];
  }
}

void bucketed_sort_range(const CooTensor& t, std::span<const Mode> prefix,
                         Mode mode, std::size_t row_begin, std::size_t row_end,
                         std::uint32_t* count, std::uint32_t* bucket,
                         std::uint32_t* pos, std::uint32_t* perm,
                         std::uint32_t* out_coords, double* out_values) {
  const std::size_t m = row_end - row_begin;
  if (m == 0) return;
  assert(prefix_sorted(t, prefix, row_begin, row_end));
  const std::size_t r = t.rank();
  const std::uint32_t n = t.dims[mode];
  const std::uint32_t* crd = t.coords.data();
  const double* val = t.values.data();

  // Count keys, discover the buckets (equivalence classes of the prefix
  // modes), and record each bucket's start in pos.
  std::uint32_t nbuckets = 0;
  bucket[0] = 0;
  pos[0] = 0;
  {
    const std::uint32_t key = crd[row_begin * r + mode];
    if (key >= n) throw_corrupt(row_begin, mode);
    ++count[key + 1];
  }
  for (std::size_t j = 1; j < m; ++j) {
    if (!rows_equal_on(t, row_begin + j - 1, row_begin + j, prefix)) {
      ++nbuckets;
      pos[nbuckets] = static_cast<std::uint32_t>(j);
    }
    bucket[j] = nbuckets;
    const std::uint32_t key = crd[(row_begin + j) * r + mode];
    if (key >= n) throw_corrupt(row_begin + j, mode);
    ++count[key + 1];
  }

  // Prefix sum: count[key] becomes the first output slot for that key.
  for (std::uint32_t i = 1; i <= n; ++i) count[i] += count[i - 1];
  assert(count[n] <= m);

  // perm sorts the range stably on `mode` alone.
  for (std::size_t j = 0; j < m; ++j) {
    const std::uint32_t key = crd[(row_begin + j) * r + mode];
    perm[count[key]++] = static_cast<std::uint32_t>(j);
  }

  // Walk perm in order and drop each row back into its bucket; pos serves as
  // the per-bucket output cursor. This reimposes the prefix ordering.
  for (std::size_t p = 0; p < m; ++p) {
    const std::uint32_t j = perm[p];
    const std::uint32_t out_local = pos[bucket[j]]++;
    const std::size_t src = row_begin + j;
    const std::size_t dst = row_begin + out_local;
    std::copy_n(crd + src * r, r, out_coords + dst * r);
    out_values[dst] = val[src];
  }
}

std::vector<std::size_t> bucket_starts(const CooTensor& t,
                                       std::span<const Mode> modes,
                                       std::size_t row_begin,
                                       std::size_t row_end) {
  std::vector<std::size_t> starts;
  if (row_begin >= row_end) return starts;
  starts.push_back(row_begin);
  for (std::size_t j = row_begin + 1; j < row_end; ++j) {
    if (!rows_equal_on(t, j - 1, j, modes)) starts.push_back(j);
  }
  return starts;
}

}  // namespace detail

namespace {

void validate_sort_args(const CooTensor& t, std::span<const Mode> prefix,
                        Mode mode) {
  const Mode r = t.rank();
  if (mode >= r) throw std::invalid_argument("sort mode out of range");
  if (prefix.size() >= r) {
    throw std::invalid_argument("prefix length out of range");
  }
  for (Mode p : prefix) {
    if (p >= r) throw std::invalid_argument("prefix mode out of range");
    if (p == mode) {
      throw std::invalid_argument("sort mode lies inside the bucketing prefix");
    }
  }
}

}  // namespace

void partial_sort(CooTensor& tensor, std::span<const Mode> prefix, Mode mode,
                  Workspace& ws) {
  validate_sort_args(tensor, prefix, mode);
  const std::size_t n_rows = tensor.nnz();
  if (n_rows == 0) return;
  const std::size_t r = tensor.rank();
  const std::uint32_t n = tensor.dims[mode];

  ws.count.assign(n + 1, 0);
  ws.coords_out.resize(n_rows * r);
  ws.values_out.resize(n_rows);

  if (prefix.empty()) {
    detail::count_keys(tensor, mode, 0, n_rows, ws.count);
    for (std::uint32_t i = 1; i <= n; ++i) ws.count[i] += ws.count[i - 1];
    assert(std::is_sorted(ws.count.begin(), ws.count.end()) &&
           ws.count[n] <= n_rows);
    detail::scatter_rows(tensor, mode, 0, n_rows, ws.count.data(),
                         ws.coords_out.data(), ws.values_out.data());
  } else {
    ws.bucket.resize(n_rows);
    ws.pos.resize(n_rows);
    ws.perm.resize(n_rows);
    detail::bucketed_sort_range(tensor, prefix, mode, 0, n_rows,
                                ws.count.data(), ws.bucket.data(),
                                ws.pos.data(), ws.perm.data(),
                                ws.coords_out.data(), ws.values_out.data());
  }

  tensor.coords.swap(ws.coords_out);
  tensor.values.swap(ws.values_out);
}

void sort_rows_by(CooTensor& tensor, std::size_t row_begin,
                  std::size_t row_end, std::span<const Mode> key_modes) {
  const std::size_t r = tensor.rank();
  for (Mode m : key_modes) {
    if (m >= r) throw std::invalid_argument("key mode out of range");
  }
  const std::size_t m = row_end - row_begin;
  if (m < 2) return;

  const std::uint32_t* crd = tensor.coords.data();
  std::vector<std::uint32_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0u);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     const std::uint32_t* ra = crd + (row_begin + a) * r;
                     const std::uint32_t* rb = crd + (row_begin + b) * r;
                     for (Mode k : key_modes) {
                       if (ra[k] != rb[k]) return ra[k] < rb[k];
                     }
                     return false;
                   });

  std::vector<std::uint32_t> tmp_coords(m * r);
  std::vector<double> tmp_values(m);
  for (std::size_t p = 0; p < m; ++p) {
    const std::size_t src = row_begin + idx[p];
    std::copy_n(crd + src * r, r, tmp_coords.data() + p * r);
    tmp_values[p] = tensor.values[src];
  }
  std::copy_n(tmp_coords.data(), m * r,
              tensor.coords.data() + row_begin * r);
  std::copy_n(tmp_values.data(), m, tensor.values.data() + row_begin);
}

}  // namespace quesadilla
