#pragma once

#include <cstddef>
#include <functional>

namespace qforge {

// Worker count: QFORGE_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t thread_count();

// Runs body(begin, end, worker) over a static partition of [0, n) into
// contiguous chunks, one per worker. Chunk boundaries depend only on n and
// the worker count.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace qforge
