#include "evothresh/parallel.hpp"

#include <omp.h>

namespace evothresh {

int Parallelism::resolved() const { return workers > 0 ? workers : omp_get_max_threads(); }

void parallel_for(std::size_t n, const Parallelism& par, const std::function<void(std::size_t)>& job) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(par.resolved())
  for (long long i = 0; i < count; ++i) {
    try {
      job(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void serial_for(std::size_t n, const std::function<void(std::size_t)>& job) {
  for (std::size_t i = 0; i < n; ++i) job(i);
}

}  // namespace evothresh
