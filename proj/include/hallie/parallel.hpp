// A small fork-join loop over an index range.
#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hallie {

/// Calls fn(i) for i in [0, n) on up to jobs threads; the first exception is rethrown.
template <class Fn>
void parallel_for(long long n, int jobs, Fn&& fn) {
  const int workers = static_cast<int>(std::clamp<long long>(jobs, 1, std::max<long long>(n, 1)));
  if (workers == 1) {
    for (long long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<long long> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto work = [&] {
    try {
      for (long long i = next++; i < n; i = next++) fn(i);
    } catch (...) {
      std::lock_guard lk(mu);
      if (!error) error = std::current_exception();
      next = n;
    }
  };
  std::vector<std::jthread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace hallie
