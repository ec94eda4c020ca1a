#pragma once

#include <cstddef>
#include <functional>

namespace stidelab {

/// Worker count from STIDE_LAB_THREADS, else the hardware concurrency (>= 1).
std::size_t default_thread_count();

/// Runs fn(0..n-1) on up to `threads` workers. Each index runs exactly once;
/// callers write results by index so output order never depends on scheduling.
/// The first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace stidelab
