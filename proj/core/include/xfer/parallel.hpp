#pragma once

#include <cstdint>
#include <functional>

namespace xfer {

/// Process-wide cap on worker threads. Defaults to hardware concurrency.
int max_threads();
void set_max_threads(int n);

/// Splits [0, n) into contiguous blocks and runs `body(begin, end)` on up
/// to max_threads() workers. Each index is visited exactly once, so bodies
/// that write disjoint outputs produce bitwise-identical results for any
/// thread count. Nested calls run inline on the calling thread.
void parallel_for(std::int64_t n,
                  const std::function<void(std::int64_t, std::int64_t)>& body);

/// Minimum work size below which parallel_for stays single-threaded.
inline constexpr std::int64_t kParallelGrain = 2048;

} // namespace xfer
