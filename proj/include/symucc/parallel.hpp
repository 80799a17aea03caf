#pragma once

#include <cstddef>
#include <functional>

namespace symucc {

/// Worker count: SYMUCC_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
std::size_t thread_count();

/// Run body(i) for i in [0, n) on up to thread_count() threads with static
/// chunking. body must only write to per-index state. Rethrows the first
/// exception after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace symucc
