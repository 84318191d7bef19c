#pragma once

#include <cstddef>
#include <functional>

namespace picard_strata {

// Worker count for corpus sweeps: PICARD_STRATA_THREADS when set (minimum 1),
// otherwise the hardware concurrency.
int default_thread_count();

// Runs fn(i) for i in [0, n) on the given number of workers (<= 0 picks the
// default).  Work is handed out through a shared counter; fn must be safe to
// call concurrently for distinct indices.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

} // namespace picard_strata
