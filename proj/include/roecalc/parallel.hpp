#pragma once

#include <cstddef>
#include <functional>

namespace roecalc {

/// Worker cap: ROE_CALC_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Calls body(i) for every i in [0, n). Iterations must write disjoint state;
/// results are then independent of scheduling. Small ranges run inline.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace roecalc
