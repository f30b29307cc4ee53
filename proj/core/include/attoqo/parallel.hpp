#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace attoqo {

// Worker count used by parallel_for. Results never depend on it: loops only
// ever write disjoint elements and reductions are performed sequentially.
void set_worker_threads(int n);
int worker_threads();

template <typename F>
void parallel_for(std::ptrdiff_t n, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(worker_threads())
  for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
#else
  for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
#endif
}

} // namespace attoqo
