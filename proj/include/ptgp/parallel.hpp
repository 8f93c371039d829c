#pragma once

#include <cstddef>
#include <functional>

namespace ptgp {

// Runs body(i) for i in [0, n) on up to `threads` workers (0: hardware
// concurrency). The first exception thrown by any call is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

unsigned default_threads();

}  // namespace ptgp
