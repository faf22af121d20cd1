#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

namespace evothresh {

/// Worker-pool width for OpenMP kernels; 0 means the OpenMP default.
struct Parallelism {
  int workers = 0;

  int resolved() const;
};

/// Runs job(i) for i in [0, n) on an OpenMP team. Jobs must be independent;
/// the first exception thrown (by index) is rethrown after the loop.
void parallel_for(std::size_t n, const Parallelism& par, const std::function<void(std::size_t)>& job);

/// Same contract, always on the calling thread. Kept as the reference the
/// OpenMP path is tested against.
void serial_for(std::size_t n, const std::function<void(std::size_t)>& job);

}  // namespace evothresh
