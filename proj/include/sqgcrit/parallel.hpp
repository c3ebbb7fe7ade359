#pragma once

#include <cstddef>
#include <functional>

namespace sqgcrit {

/// Upper bound on worker threads used by parallel_for (>= 1). Defaults to 1.
void set_worker_count(int workers);
int worker_count();

/// Calls body(i) for i in [0, count). Each index runs exactly once; callers
/// write results into per-index slots so reductions stay order-independent.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace sqgcrit
