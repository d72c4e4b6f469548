#pragma once

#include <cstddef>
#include <functional>

namespace simscore {

/// Worker count: SIMSCORE_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
unsigned default_thread_count();

/// Runs body(i) for every i in [0, n). Iterations must write to disjoint
/// slots; results therefore do not depend on the schedule. The first
/// exception thrown by any iteration is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads = 0);

}  // namespace simscore
