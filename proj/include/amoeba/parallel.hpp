#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace amoeba {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Fixed-size pool over a deterministic block list. Each block writes only its
// own outputs, so results are identical for any thread count; callers reduce
// in block order.
inline void parallel_for_blocks(std::int64_t n_blocks, int threads,
                                const std::function<void(std::int64_t)>& body) {
  threads = resolve_threads(threads);
  if (threads <= 1 || n_blocks <= 1) {
    for (std::int64_t b = 0; b < n_blocks; ++b) body(b);
    return;
  }
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::int64_t b = next.fetch_add(1);
      if (b >= n_blocks) return;
      body(b);
    }
  };
  std::vector<std::thread> pool;
  const int n_workers = static_cast<int>(std::min<std::int64_t>(threads, n_blocks));
  pool.reserve(n_workers);
  for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace amoeba
