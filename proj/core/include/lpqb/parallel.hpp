#pragma once

#include <functional>

namespace lpqb {

/// Runs fn(0..n-1) across up to `workers` threads. Work items must write to
/// disjoint state indexed by their own argument, which keeps results
/// invariant to the worker count and scheduling. The first exception thrown
/// by any item is rethrown after all threads join.
void parallel_for(long n, int workers, const std::function<void(long)>& fn);

}  // namespace lpqb
