#pragma once

// Execution policy shared by the scan and experiment kernels. Every
// parallel kernel has a serial twin producing identical results; tests
// compare the two and bench/ times them.

#include <cstddef>
#include <exception>
#include <optional>
#include <vector>

namespace aplab {

enum class Exec { Serial, Parallel };

/// Threads OpenMP will use for Exec::Parallel (honours OMP_NUM_THREADS).
int thread_count();

/// out[i] = f(i) for i in [0, n). Exceptions thrown by f are rethrown
/// after the loop, lowest index first.
template <class Result, class F>
std::vector<Result> map_indices(std::size_t n, Exec exec, F&& f) {
  std::vector<std::optional<Result>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  const long count = static_cast<long>(n);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
      try {
        slots[static_cast<std::size_t>(i)].emplace(f(static_cast<std::size_t>(i)));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (long i = 0; i < count; ++i) {
      try {
        slots[static_cast<std::size_t>(i)].emplace(f(static_cast<std::size_t>(i)));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Result> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace aplab
