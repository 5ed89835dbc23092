#pragma once

#include <cstddef>
#include <functional>

namespace windvox {

/// Thread count from the WINDVOX_THREADS environment variable, falling back to
/// the hardware concurrency. Always >= 1.
unsigned default_thread_count();

/// Resolves 0 ("auto") to default_thread_count().
unsigned resolve_thread_count(unsigned requested);

/// Splits [0, count) into fixed chunks of `chunk` items and hands them to
/// `threads` workers. Chunk boundaries depend only on `count` and `chunk`, so
/// callers that write disjoint per-chunk outputs get results independent of
/// the thread count. If `body(begin, end, worker)` throws, remaining chunks are
/// skipped and the first exception is rethrown on the calling thread.
void parallel_chunks(std::size_t count, std::size_t chunk, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, unsigned)>& body);

}  // namespace windvox
