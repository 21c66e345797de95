#pragma once

#if defined(_OPENMP)
#include <omp.h>
#define LSI_OMP_STRINGIFY(x) #x
#define LSI_PRAGMA_OMP(x) _Pragma(LSI_OMP_STRINGIFY(omp x))
#else
#define LSI_PRAGMA_OMP(x)
#endif

namespace lsi {

/// Apply the LSI_THREADS environment variable (0 or unset = automatic).
void configure_threads_from_env();

/// Current worker count (1 when built without OpenMP).
int thread_count();

}  // namespace lsi
