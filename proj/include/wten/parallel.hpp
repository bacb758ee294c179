#pragma once

namespace wten {

/// Upper bound on OpenMP threads used by library kernels. 0 restores the
/// OpenMP default. Results never depend on this value.
void set_thread_count(int threads);

/// Threads the next parallel kernel will use.
int thread_count();

/// Applies WTEN_THREADS from the environment (0 or unset = auto) and returns
/// the resulting thread count.
int configure_threads_from_env();

}  // namespace wten
