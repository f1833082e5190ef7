#pragma once

#include <cstddef>
#include <functional>

namespace hypflow {

/// Worker count: HYPFLOW_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t thread_budget();

/// Calls body(i) for i in [0, n), spread over at most thread_budget() threads.
/// Each index runs exactly once; results written by index keep output order
/// independent of scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hypflow
