#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace cubelab {

// Worker count: CUBELAB_THREADS env var, else hardware concurrency.
int thread_count();
void set_thread_count(int n);

// Runs fn(chunk_index, begin, end) on [0,n) split into contiguous chunks,
// one chunk per worker.  Caller merges per-chunk results in chunk order,
// so reductions stay deterministic.
void parallel_chunks(std::size_t n,
                     const std::function<void(int, std::size_t, std::size_t)>& fn);

// Convenience: apply fn(i) to every i in [0,n) in parallel.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace cubelab
