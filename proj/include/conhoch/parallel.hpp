#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace conhoch {

/// Worker count from CONHOCH_JOBS, 1 when unset or invalid.
inline int default_jobs() {
  const char* s = std::getenv("CONHOCH_JOBS");
  if (!s) return 1;
  try {
    const int n = std::stoi(s);
    return n >= 1 ? n : 1;
  } catch (...) {
    return 1;
  }
}

/// Runs fn(0..n-1) on up to `jobs` threads. Each index is processed exactly
/// once; callers write results into slot i, so the merge order is fixed. The
/// first exception thrown by a worker is rethrown here.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace conhoch
