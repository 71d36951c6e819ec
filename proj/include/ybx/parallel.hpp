#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ybx {

/// Samples per RNG stream in the Monte-Carlo routines.
inline constexpr std::size_t kChunkSize = 4096;

inline std::size_t chunk_count(std::size_t n) { return (n + kChunkSize - 1) / kChunkSize; }

/// Calls fn(chunk, begin, end) for every chunk of [0, n). Chunks are claimed
/// dynamically by up to `workers` threads; callers must write results into
/// per-chunk slots so the merged output is independent of the schedule.
template <class Fn>
void for_each_chunk(std::size_t n, unsigned workers, Fn&& fn) {
  const std::size_t chunks = chunk_count(n);
  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = c * kChunkSize;
    fn(c, begin, std::min(n, begin + kChunkSize));
  };
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), chunks));
  if (threads <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t c = next++; c < chunks; c = next++) {
        try {
          run_chunk(c);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = chunks;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace ybx
