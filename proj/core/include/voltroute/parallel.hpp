#pragma once

#include <cstddef>
#include <functional>

namespace voltroute {

// Worker count: VOLTROUTE_THREADS if set to a positive integer, otherwise
// std::thread::hardware_concurrency() (at least 1).
int worker_count();

// Runs body(i) for i in [0, n). Each index is visited exactly once; results
// must be written to per-index slots so output does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace voltroute
