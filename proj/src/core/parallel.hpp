#pragma once

#include <cstddef>
#include <functional>

namespace specsmooth {

// Upper bound on worker threads used by library kernels. 0 means "use the
// hardware concurrency". Results never depend on this setting: every parallel
// loop writes into pre-assigned slots and reductions happen afterwards in
// index order.
void set_thread_limit(int limit);
int thread_limit();
unsigned effective_threads();

// Runs body(i) for i in [0, count). Work is split into contiguous chunks.
// If any invocation throws, the exception from the smallest index is
// rethrown after all workers have joined.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace specsmooth
