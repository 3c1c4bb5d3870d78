#pragma once

#include <cstddef>
#include <functional>

namespace tangentrep {

/// Worker count: hardware concurrency, capped by TANGENTREP_THREADS when set.
unsigned thread_count();

/// Calls body(begin, end) on disjoint contiguous chunks covering [0, n).
/// Exceptions thrown by any chunk are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace tangentrep
