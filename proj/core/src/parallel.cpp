#include "xfer/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace xfer {

namespace {

std::atomic<int> g_max_threads{0}; // 0 = uninitialized

thread_local bool tl_in_parallel_region = false;

int hardware_threads() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

} // namespace

int max_threads() {
  int n = g_max_threads.load(std::memory_order_relaxed);
  return n > 0 ? n : hardware_threads();
}

void set_max_threads(int n) {
  g_max_threads.store(n > 0 ? n : 0, std::memory_order_relaxed);
}

void parallel_for(std::int64_t n,
                  const std::function<void(std::int64_t, std::int64_t)>& body) {
  if (n <= 0) return;

  const int want = std::min<std::int64_t>(max_threads(), n);
  if (want <= 1 || n < kParallelGrain || tl_in_parallel_region) {
    body(0, n);
    return;
  }

  const std::int64_t chunk = (n + want - 1) / want;
  std::atomic<bool> failed{false};
  std::exception_ptr first_error; // written by at most one thread, read after join

  auto run_block = [&](std::int64_t begin, std::int64_t end) {
    tl_in_parallel_region = true;
    try {
      body(begin, end);
    } catch (...) {
      bool expected = false;
      if (failed.compare_exchange_strong(expected, true))
        first_error = std::current_exception();
    }
    tl_in_parallel_region = false;
  };

  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(want) - 1);
  for (int t = 1; t < want; ++t) {
    const std::int64_t begin = t * chunk;
    const std::int64_t end = std::min<std::int64_t>(begin + chunk, n);
    if (begin >= end) break;
    workers.emplace_back(run_block, begin, end);
  }
  run_block(0, std::min<std::int64_t>(chunk, n));
  for (auto& w : workers) w.join();

  if (failed.load()) std::rethrow_exception(first_error);
}

} // namespace xfer
