#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#include "kout/execution.hpp"

namespace kout::detail {

/// Runs body(i) for i in [0, count). The serial path is the reference; the
/// parallel path uses an OpenMP dynamic schedule. The first exception thrown
/// by any iteration is rethrown after the loop.
template <class Body>
void parallel_for(std::size_t count, Execution execution, Body&& body) {
  if (execution == Execution::kSerial) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace kout::detail
