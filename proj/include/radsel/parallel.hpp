#pragma once

#include <cstddef>
#include <utility>

namespace radsel {

// Resolve a worker-count request; 0 (or negative) means all hardware threads.
int resolve_workers(int requested);

// Serial reference path: a plain loop with no OpenMP involvement. Kept as a
// separate implementation so kernels can be checked and benchmarked against it.
template <typename Fn>
void run_indexed_serial(std::ptrdiff_t count, Fn&& fn) {
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    fn(i);
  }
}

// OpenMP path. Each index must write only to its own output slot; under that
// contract the schedule cannot change the result.
template <typename Fn>
void run_indexed_openmp(std::ptrdiff_t count, int workers, Fn&& fn) {
#pragma omp parallel for schedule(static) num_threads(workers)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    fn(i);
  }
}

template <typename Fn>
void run_indexed(std::ptrdiff_t count, int workers, Fn&& fn) {
  const int w = resolve_workers(workers);
  if (w <= 1 || count < 2) {
    run_indexed_serial(count, std::forward<Fn>(fn));
  } else {
    run_indexed_openmp(count, w, std::forward<Fn>(fn));
  }
}

}  // namespace radsel
