#pragma once

#include "wten/tensor.hpp"

#include <exception>
#include <mutex>

namespace wten::detail {

/// Runs body(i) for i in [0, count) across OpenMP threads. Each index must
/// write only its own outputs. If bodies throw, the exception from the
/// smallest index is rethrown, so failures do not depend on scheduling.
template <class Body>
void parallel_for(Index count, Body&& body) {
  std::exception_ptr error;
  Index error_index = count;
  std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic, 1) if (count > 1)
  for (Index i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (i < error_index) {
        error_index = i;
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace wten::detail
