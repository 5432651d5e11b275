#pragma once

#include <cstddef>
#include <exception>
#include <utility>
#include <vector>

#include <omp.h>

namespace ratioslab::parallel {

// Fold a vector of partial results pairwise in fixed index order.  The
// reduction tree depends only on the number of entries, so the result is
// bit-identical no matter how the entries were produced.
template <class T>
T pairwise_fold(std::vector<T> v) {
  if (v.empty()) return T{};
  while (v.size() > 1) {
    std::size_t half = v.size() / 2;
    for (std::size_t i = 0; i < half; ++i) v[i] = v[2 * i] + v[2 * i + 1];
    if (v.size() % 2 == 1) {
      v[half] = v.back();
      v.resize(half + 1);
    } else {
      v.resize(half);
    }
  }
  return v[0];
}

inline constexpr std::size_t kChunk = 4096;

namespace detail {

// Exceptions may not escape an OpenMP region; capture the lowest-index one
// so the surfaced error does not depend on thread scheduling.
class ErrorSlot {
 public:
  void capture(std::size_t index) {
    auto ptr = std::current_exception();
#pragma omp critical(ratioslab_error_slot)
    if (!err_ || index < index_) {
      err_ = ptr;
      index_ = index;
    }
  }
  void rethrow_if_set() const {
    if (err_) std::rethrow_exception(err_);
  }

 private:
  std::exception_ptr err_;
  std::size_t index_ = 0;
};

}  // namespace detail

// Run body(i) for i in [0, n), distributing iterations over threads.  Each
// iteration must be independent; results must be written to disjoint slots.
template <class F>
void parallel_for(std::size_t n, F&& body) {
  detail::ErrorSlot err;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      err.capture(static_cast<std::size_t>(i));
    }
  }
  err.rethrow_if_set();
}

// Deterministic parallel sum of f(i) over i in [0, n).  The index range is
// cut into fixed-width chunks; each chunk is accumulated serially in index
// order and the chunk partials are pairwise-folded.  Threads only decide who
// computes which chunk, never the arithmetic order, so the value is
// bit-identical for any thread count (including 1).
template <class T, class F>
T chunked_sum(std::size_t n, F&& f, std::size_t chunk = kChunk) {
  if (n == 0) return T{};
  const std::size_t nchunks = (n + chunk - 1) / chunk;
  std::vector<T> partial(nchunks, T{});
  detail::ErrorSlot err;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nchunks); ++c) {
    try {
      const std::size_t lo = static_cast<std::size_t>(c) * chunk;
      const std::size_t hi = std::min(lo + chunk, n);
      T acc{};
      for (std::size_t i = lo; i < hi; ++i) acc += f(i);
      partial[static_cast<std::size_t>(c)] = acc;
    } catch (...) {
      err.capture(static_cast<std::size_t>(c));
    }
  }
  err.rethrow_if_set();
  return pairwise_fold(std::move(partial));
}

inline int max_jobs() { return omp_get_max_threads(); }
inline void set_jobs(int n) {
  if (n > 0) omp_set_num_threads(n);
}

}  // namespace ratioslab::parallel
