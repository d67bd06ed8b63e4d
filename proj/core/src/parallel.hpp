#pragma once

// Minimal work pool: body(i) for i in [0, count) on `workers` threads.
// Results must be written to per-index slots so output order never depends
// on scheduling.

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace alc::detail {

template <class F>
void parallel_for(int count, int workers, F&& body) {
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace alc::detail
