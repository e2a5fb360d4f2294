#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace bksat {

/// Number of worker threads used when a caller passes 0.
inline unsigned default_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Evaluates f(0), ..., f(count - 1) on a small thread pool and returns the
/// results in index order. Tasks must derive all randomness from their index;
/// then the result does not depend on the thread count. The first exception
/// thrown by any task is rethrown.
template <class F>
auto parallel_map(std::size_t count, F &&f, unsigned threads = 0)
    -> std::vector<std::invoke_result_t<F &, std::size_t>> {
  using R = std::invoke_result_t<F &, std::size_t>;
  std::vector<R> out(count);
  if (threads == 0)
    threads = default_threads();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      auto i = next.fetch_add(1);
      if (i >= count)
        return;
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back(worker);
  for (auto &t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
  return out;
}

} // namespace bksat
