#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cocycle {

/// Serial loops are the reference; parallel loops must give identical output,
/// so every kernel writes by index and reduces by least index.
enum class Exec { Serial, Parallel };

Exec defaultExec();
void setDefaultExec(Exec e);
int parallelThreads();

namespace detail {

struct FirstError {
  std::size_t index = static_cast<std::size_t>(-1);
  std::exception_ptr error;

  void record(std::size_t i, std::exception_ptr e) {
#ifdef _OPENMP
#pragma omp critical(cocycle_first_error)
#endif
    {
      if (i < index) {
        index = i;
        error = std::move(e);
      }
    }
  }
  void rethrow() const {
    if (error) std::rethrow_exception(error);
  }
};

}  // namespace detail

/// out[i] = f(i) for i in [0, n).
template <class T, class F>
std::vector<T> mapIndices(std::size_t n, Exec exec, F&& f) {
  std::vector<T> out(n);
  detail::FirstError err;
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  const auto count = static_cast<long long>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
  for (long long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
      err.record(static_cast<std::size_t>(i), std::current_exception());
    }
  }
  err.rethrow();
  return out;
}

/// Least i in [0, n) with !ok(i), if any.
template <class F>
std::optional<std::size_t> firstFailure(std::size_t n, Exec exec, F&& ok) {
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!ok(i)) return i;
    }
    return std::nullopt;
  }
  std::size_t best = n;
  detail::FirstError err;
  const auto count = static_cast<long long>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 256) reduction(min : best)
#endif
  for (long long i = 0; i < count; ++i) {
    auto idx = static_cast<std::size_t>(i);
    if (idx >= best) continue;
    try {
      if (!ok(idx)) best = idx;
    } catch (...) {
      err.record(idx, std::current_exception());
    }
  }
  // An exception at a smaller index than the first failure wins, as in the
  // serial loop.
  if (err.error && err.index < best) err.rethrow();
  if (best < n) return best;
  return std::nullopt;
}

}  // namespace cocycle
