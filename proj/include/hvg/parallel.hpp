#pragma once

// Minimal fork-join helper. Tasks must write only to their own output slots;
// callers merge slots in index order, which keeps results independent of the
// worker count and of scheduling.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hvg {

/// Worker count from HVG_WORKERS, falling back to 1.
inline unsigned default_worker_count() {
  if (const char* env = std::getenv("HVG_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
  }
  return 1;
}

/// Runs fn(i) for every i in [0, count) on `workers` threads. Indices are
/// handed out in chunks from a shared counter. The first exception thrown by
/// any task is rethrown on the calling thread.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn,
                  std::size_t chunk = 1) {
  if (count == 0) return;
  workers = std::max(1u, workers);
  if (workers == 1 || count <= chunk) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  chunk = std::max<std::size_t>(1, chunk);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto body = [&] {
    for (;;) {
      const std::size_t begin = next.fetch_add(chunk, std::memory_order_relaxed);
      if (begin >= count) return;
      const std::size_t end = std::min(count, begin + chunk);
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count, std::memory_order_relaxed);
        return;
      }
    }
  };

  const unsigned spawned =
      static_cast<unsigned>(std::min<std::size_t>(workers, (count + chunk - 1) / chunk));
  {
    std::vector<std::jthread> pool;
    pool.reserve(spawned - 1);
    for (unsigned t = 1; t < spawned; ++t) pool.emplace_back(body);
    body();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace hvg
