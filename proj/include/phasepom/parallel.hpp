#pragma once

#include <cstddef>
#include <functional>

namespace phasepom {

// Worker cap from PHASEPOM_THREADS (default 1, clamped to [1,64]).
int worker_count();

// Runs fn(chunk_index, begin, end) over [0,n) split into fixed-size chunks.
// Chunk boundaries do not depend on the worker count, so per-chunk results
// reduced in chunk order are bit-identical for any PHASEPOM_THREADS.
void parallel_chunks(std::size_t n, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace phasepom
