#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace strucred {

// Splits [0, n) into fixed-size chunks and runs `work(chunk_id, begin, end)`
// across `workers` threads. Chunk boundaries depend only on n, never on the
// worker count, and callers combine per-chunk results in chunk order, so any
// reduction built on this is bit-identical for 1 or N threads.
template <class ChunkResult>
std::vector<ChunkResult> run_chunked(
    std::size_t n, std::size_t chunk_size, unsigned workers,
    const std::function<ChunkResult(std::size_t, std::size_t, std::size_t)>& work) {
  if (chunk_size == 0) chunk_size = 1;
  const std::size_t n_chunks = n == 0 ? 0 : (n + chunk_size - 1) / chunk_size;
  std::vector<ChunkResult> results(n_chunks);
  if (n_chunks == 0) return results;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_chunks));

  std::atomic<std::size_t> next{0};
  auto runner = [&]() {
    for (std::size_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) {
      const std::size_t begin = c * chunk_size;
      const std::size_t end = std::min(n, begin + chunk_size);
      results[c] = work(c, begin, end);
    }
  };
  if (workers == 1) {
    runner();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(runner);
    for (auto& t : pool) t.join();
  }
  return results;
}

}  // namespace strucred
