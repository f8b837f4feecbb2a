#pragma once

#include <cstddef>
#include <functional>

namespace mtdlab {

// Number of worker threads to use: MTDLAB_THREADS when set (minimum 1),
// otherwise the hardware concurrency.
std::size_t max_threads();

// Runs fn(i) for i in [0, count). Iterations must be independent; they may
// run on multiple threads, so determinism requires each iteration to own its
// randomness (fork a stream per index) and write only to its own slot.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace mtdlab
