#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace boa {

// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index owns its
// output slot, so results are worker-count independent. The first exception
// wins and is rethrown on the calling thread.
template <typename F>
void parallel_for(std::size_t n, int workers, F&& fn) {
  if (workers < 1) workers = 1;
  if (workers == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  int count = std::min<std::size_t>(std::size_t(workers), n);
  threads.reserve(std::size_t(count));
  for (int t = 0; t < count; ++t) threads.emplace_back(body);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

// Default worker count: BOA_WORKERS env var, else hardware concurrency.
inline int default_workers() {
  if (const char* env = std::getenv("BOA_WORKERS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(hw) : 1;
}

}  // namespace boa
