#pragma once

#include <functional>

namespace plank {

/// Hardware concurrency, at least 1.
int defaultThreads();

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 selects
/// defaultThreads()). Indices are handed out dynamically; callers store
/// results by index so the outcome does not depend on scheduling. The first
/// exception thrown by any body is rethrown after all workers stop.
void parallelFor(int count, int threads, const std::function<void(int)>& body);

}  // namespace plank
