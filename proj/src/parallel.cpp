#include "lsi/parallel.hpp"

#include <cstdlib>
#include <string>

namespace lsi {

void configure_threads_from_env() {
#if defined(_OPENMP)
  const char* env = std::getenv("LSI_THREADS");
  if (!env) return;
  try {
    const int n = std::stoi(env);
    if (n > 0) omp_set_num_threads(n);
  } catch (...) {
    // ignore malformed values, keep the OpenMP default
  }
#endif
}

int thread_count() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace lsi
