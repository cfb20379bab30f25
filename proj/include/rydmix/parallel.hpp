#pragma once

#include <cstddef>
#include <functional>

namespace rydmix {

/// Worker count for sweeps: RYDMIX_THREADS if set to a positive integer,
/// otherwise std::thread::hardware_concurrency() (at least 1).
unsigned sweep_threads();

/// Calls body(i) for i in [0, count) on up to `threads` workers (0 means
/// sweep_threads()). Indices are handed out dynamically. The first exception
/// thrown by any call is rethrown after all workers have stopped.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, unsigned threads = 0);

}  // namespace rydmix
