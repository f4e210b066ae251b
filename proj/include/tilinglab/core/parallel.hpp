#pragma once

#include <cstddef>
#include <functional>

namespace tilinglab {

/// Worker count: the override if set, else TILINGLAB_THREADS, else hardware concurrency.
std::size_t worker_count();
void set_worker_count_override(std::size_t count); // 0 clears the override

/// Runs body(begin, end) over contiguous chunks of [0, n). Chunk boundaries depend only on n
/// and the chunk count, so per-index results written by the body are schedule independent.
void parallel_for_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

} // namespace tilinglab
