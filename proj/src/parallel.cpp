#include "quesadilla/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cstdlib>
#include <exception>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace quesadilla {

unsigned ParallelConfig::default_workers() {
  if (const char* env = std::getenv("QUESADILLA_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace {

// Fork-join over worker ids 0..workers-1. The calling thread runs worker 0;
// exceptions from any worker are rethrown after the join.
void run_on_workers(unsigned workers,
                    const std::function<void(unsigned)>& body) {
  if (workers <= 1) {
    body(0);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        body(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  try {
    body(0);
  } catch (...) {
    errors[0] = std::current_exception();
  }
  for (std::thread& t : threads) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::size_t chunk_bound(std::size_t n, unsigned workers, unsigned w) {
  return n * w / workers;
}

void parallel_histogram_sort(CooTensor& tensor, Mode mode, Workspace& ws,
                             unsigned workers) {
  const std::size_t n_rows = tensor.nnz();
  const std::size_t r = tensor.rank();
  const std::uint32_t n = tensor.dims[mode];

  ws.coords_out.resize(n_rows * r);
  ws.values_out.resize(n_rows);

  // Private histogram per worker over its contiguous chunk of rows.
  std::vector<std::uint32_t> counts(std::size_t{workers} * n, 0);
  run_on_workers(workers, [&](unsigned w) {
    std::uint32_t* mine = counts.data() + std::size_t{w} * n;
    const std::size_t b = chunk_bound(n_rows, workers, w);
    const std::size_t e = chunk_bound(n_rows, workers, w + 1);
    const std::uint32_t* crd = tensor.coords.data();
    for (std::size_t j = b; j < e; ++j) {
      const std::uint32_t key = crd[j * r + mode];
      if (key >= n) {
        throw std::out_of_range("coordinate exceeds the dimension of mode " +
                                std::to_string(mode));
      }
      ++mine[key];
    }
  });

  // Exclusive scan ordered (key, worker): all rows of a smaller key land
  // first, and within a key the lower-numbered (earlier) chunk wins. That
  // order is exactly what keeps the parallel sort stable.
  std::uint32_t running = 0;
  for (std::uint32_t key = 0; key < n; ++key) {
    for (unsigned w = 0; w < workers; ++w) {
      std::uint32_t& slot = counts[std::size_t{w} * n + key];
      const std::uint32_t c = slot;
      slot = running;
      running += c;
    }
  }
  assert(running == n_rows);

  run_on_workers(workers, [&](unsigned w) {
    detail::scatter_rows(tensor, mode, chunk_bound(n_rows, workers, w),
                         chunk_bound(n_rows, workers, w + 1),
                         counts.data() + std::size_t{w} * n,
                         ws.coords_out.data(), ws.values_out.data());
  });

  tensor.coords.swap(ws.coords_out);
  tensor.values.swap(ws.values_out);
}

void parallel_bucketed_sort(CooTensor& tensor, std::span<const Mode> prefix,
                            Mode mode, Workspace& ws, unsigned workers) {
  const std::size_t n_rows = tensor.nnz();
  const std::size_t r = tensor.rank();
  const std::uint32_t n = tensor.dims[mode];

  ws.coords_out.resize(n_rows * r);
  ws.values_out.resize(n_rows);
  ws.bucket.resize(n_rows);
  ws.pos.resize(n_rows);
  ws.perm.resize(n_rows);

  // Align worker regions to bucket boundaries: a bucket belongs to the
  // worker whose chunk contains its first row, so a region may extend past
  // its nominal chunk end (and a worker swallowed by one giant bucket gets
  // an empty region).
  std::vector<std::size_t> region(workers + 1);
  region[0] = 0;
  region[workers] = n_rows;
  for (unsigned w = 1; w < workers; ++w) {
    std::size_t j = chunk_bound(n_rows, workers, w);
    while (j > 0 && j < n_rows &&
           detail::rows_equal_on(tensor, j - 1, j, prefix)) {
      ++j;
    }
    region[w] = j;
  }

  std::vector<std::uint32_t> counts(std::size_t{workers} * (n + 1), 0);
  run_on_workers(workers, [&](unsigned w) {
    const std::size_t b = region[w];
    const std::size_t e = region[w + 1];
    if (b >= e) return;
    detail::bucketed_sort_range(
        tensor, prefix, mode, b, e, counts.data() + std::size_t{w} * (n + 1),
        ws.bucket.data() + b, ws.pos.data() + b, ws.perm.data() + b,
        ws.coords_out.data(), ws.values_out.data());
  });

  tensor.coords.swap(ws.coords_out);
  tensor.values.swap(ws.values_out);
}

}  // namespace

void parallel_partial_sort(CooTensor& tensor, std::span<const Mode> prefix,
                           Mode mode, Workspace& ws,
                           const ParallelConfig& cfg) {
  if (cfg.workers == 0) {
    throw std::invalid_argument("worker count must be at least 1");
  }
  if (cfg.workers == 1) {
    partial_sort(tensor, prefix, mode, ws);
    return;
  }
  // Revalidate here so the parallel entry rejects bad arguments the same way
  // the serial one does.
  if (mode >= tensor.rank()) {
    throw std::invalid_argument("sort mode out of range");
  }
  for (Mode p : prefix) {
    if (p >= tensor.rank()) {
      throw std::invalid_argument("prefix mode out of range");
    }
    if (p == mode) {
      throw std::invalid_argument("sort mode lies inside the bucketing prefix");
    }
  }
  if (tensor.nnz() == 0) return;

  if (prefix.empty()) {
    parallel_histogram_sort(tensor, mode, ws, cfg.workers);
  } else {
    parallel_bucketed_sort(tensor, prefix, mode, ws, cfg.workers);
  }
}

void parallel_topk_bucket_sort(CooTensor& tensor, Mode prefix_len,
                               const Ordering& target,
                               const ParallelConfig& cfg) {
  if (cfg.workers == 0) {
    throw std::invalid_argument("worker count must be at least 1");
  }
  if (target.rank() != tensor.rank()) {
    throw std::invalid_argument("ordering rank does not match tensor rank");
  }
  if (prefix_len < 1 || prefix_len > target.rank()) {
    throw std::invalid_argument("prefix length must be in 1..rank");
  }
  const std::span<const Mode> prefix{target.modes().data(), prefix_len};
  const std::span<const Mode> suffix{target.modes().data() + prefix_len,
                                     target.rank() - prefix_len};
  if (suffix.empty() || tensor.nnz() < 2) return;

  const std::vector<std::size_t> starts =
      detail::bucket_starts(tensor, prefix, 0, tensor.nnz());
  const std::size_t nbuckets = starts.size();
  auto bucket_end = [&](std::size_t i) {
    return i + 1 < nbuckets ? starts[i + 1] : tensor.nnz();
  };

  if (cfg.workers == 1) {
    for (std::size_t i = 0; i < nbuckets; ++i) {
      sort_rows_by(tensor, starts[i], bucket_end(i), suffix);
    }
    return;
  }

  // Buckets are disjoint row ranges, so the schedule affects only load
  // balance, never the output.
  std::atomic<std::size_t> next{0};
  const unsigned workers = cfg.workers;
  const bool guided = cfg.bucket_schedule == ParallelConfig::Schedule::Guided;
  run_on_workers(workers, [&](unsigned) {
    for (;;) {
      std::size_t begin, take;
      if (guided) {
        begin = next.load(std::memory_order_relaxed);
        do {
          if (begin >= nbuckets) return;
          take = std::max<std::size_t>(
              1, (nbuckets - begin) / (2 * std::size_t{workers}));
        } while (!next.compare_exchange_weak(begin, begin + take,
                                             std::memory_order_relaxed));
      } else {
        begin = next.fetch_add(1, std::memory_order_relaxed);
        if (begin >= nbuckets) return;
        take = 1;
      }
      const std::size_t end = std::min(begin + take, nbuckets);
      for (std::size_t i = begin; i < end; ++i) {
        sort_rows_by(tensor, starts[i], bucket_end(i), suffix);
      }
    }
  });
}

}  // namespace quesadilla
