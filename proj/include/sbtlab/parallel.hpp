#pragma once

// Ordered parallel map over an index range. The thread count comes from
// SBTLAB_THREADS when set, else the hardware concurrency.

#include <cstddef>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

namespace sbt {

std::size_t thread_count();

/// results[i] = f(i) for i < n, computed on up to thread_count() threads.
/// The first exception (by index) is rethrown after all workers finish.
template <class F>
auto parallel_map(std::size_t n, F f) -> std::vector<std::invoke_result_t<F, std::size_t>> {
  using R = std::invoke_result_t<F, std::size_t>;
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  const std::size_t workers = std::min(thread_count(), n);
  auto run = [&](std::size_t w) {
    for (std::size_t i = w; i < n; i += workers) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace sbt
