#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace confkernel {

/// Worker count: CONFKERNEL_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs fn(i) for i in [0, n) on up to worker_count() threads. Results are
/// stored by index, so the output order never depends on scheduling.
template <typename T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn);

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

template <typename T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace confkernel
