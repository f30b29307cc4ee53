#include "attoqo/parallel.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace attoqo {
namespace {
int g_threads = 0; // 0 = library default
}

void set_worker_threads(int n) { g_threads = std::max(0, n); }

int worker_threads() {
  if (g_threads > 0) return g_threads;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

} // namespace attoqo
