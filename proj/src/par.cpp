#include "magspec/par.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace magspec {

int worker_count() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("MAGSPEC_THREADS")) {
    try {
      int cap = std::stoi(env);
      if (cap >= 1 && cap < n) n = cap;
    } catch (...) {
      // ignore malformed values, keep the OpenMP default
    }
  }
  return n;
#else
  return 1;
#endif
}

ExecMode default_mode() {
  return worker_count() > 1 ? ExecMode::parallel : ExecMode::serial;
}

}  // namespace magspec
