#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <thread>
#include <utility>
#include <vector>

namespace ctbands {

/// Worker budget: hardware concurrency, capped by the CT_BANDS_THREADS
/// environment variable when it parses to a positive integer. Never zero.
inline unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("CT_BANDS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
      n = std::min(n, static_cast<unsigned>(v));
  }
  return n;
}

/// Run fn(worker, begin, end) over a fixed contiguous partition of
/// [0, count). The partition depends only on count and the worker budget, so
/// callers that merge per-worker results in worker order stay deterministic.
template <typename Fn>
void parallel_chunks(std::size_t count, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, worker_count()), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    fn(std::size_t{0}, std::size_t{0}, count);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace ctbands
