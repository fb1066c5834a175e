#pragma once

#include <cstddef>
#include <functional>

namespace mocorr {

/// Number of worker threads used by chunked loops (0 = hardware concurrency).
void set_thread_count(unsigned threads);
unsigned thread_count();

/// Fixed work-unit size for Monte Carlo loops. Chunk boundaries depend only
/// on the problem size, never on the number of workers.
inline constexpr std::size_t kChunkSize = 1u << 15;

inline std::size_t chunk_count(std::size_t n, std::size_t chunk = kChunkSize) {
  return (n + chunk - 1) / chunk;
}

/// Runs body(chunk) for chunk in [0, n_chunks). Callers write per-chunk
/// results into pre-sized storage and reduce them in index order afterwards.
/// If several chunks throw, the exception of the lowest chunk is rethrown.
void for_each_chunk(std::size_t n_chunks,
                    const std::function<void(std::size_t)>& body);

}  // namespace mocorr
