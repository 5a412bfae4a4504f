#pragma once

#include <cstddef>
#include <functional>

namespace rcskit {

/// Worker count: RCSKIT_THREADS if set to a positive integer, else hardware concurrency (>= 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, count) across up to worker_count() threads.
/// Each index runs exactly once; callers write results by index so the outcome is order-independent.
/// The first exception thrown by any body is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace rcskit
