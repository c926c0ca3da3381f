#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace sepkit {

// Global worker cap, settable from the CLI (--threads). 0 means "use
// hardware concurrency". Results never depend on this value: work is
// partitioned by index and merged with order-independent reductions.
void set_max_threads(unsigned n);
unsigned effective_threads();

// Runs fn(chunk_index, begin, end) on disjoint [begin,end) index ranges.
// fn must only write to per-chunk state; the caller merges afterwards.
void parallel_chunks(std::size_t count,
                     const std::function<void(unsigned, std::size_t, std::size_t)>& fn);

}  // namespace sepkit
