#pragma once

#include <cstddef>
#include <functional>

namespace gsqg {

// Worker count: GSQG_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

// Runs body(k) for k in [0, n) on up to thread_count() threads. Each index is handled by exactly
// one worker, so writes to per-index slots are deterministic. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace gsqg
