#pragma once

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace aw {

// Worker count: hardware concurrency, capped by AW_THREADS when set.
inline unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("AW_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && static_cast<unsigned>(v) < n) n = static_cast<unsigned>(v);
  }
  return n;
}

// Static-partition parallel loop over [0, n). Work items must write to
// disjoint state; any reduction over their results must happen after the
// join, in index order, so results stay independent of the thread count.
// The first exception thrown by a worker is rethrown on the caller.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      const std::size_t lo = n * t / workers;
      const std::size_t hi = n * (t + 1) / workers;
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace aw
