#include "wten/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace wten {

namespace {
int default_threads = -1;
}

void set_thread_count(int threads) {
  if (default_threads < 0) default_threads = omp_get_max_threads();
  omp_set_num_threads(threads > 0 ? threads : default_threads);
}

int thread_count() { return omp_get_max_threads(); }

int configure_threads_from_env() {
  const char* env = std::getenv("WTEN_THREADS");
  int requested = 0;
  if (env != nullptr && *env != '\0') {
    try {
      requested = std::stoi(env);
    } catch (const std::exception&) {
      requested = 0;
    }
  }
  set_thread_count(requested < 0 ? 0 : requested);
  return thread_count();
}

}  // namespace wten
