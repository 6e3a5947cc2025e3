#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace gsg::detail {

// Splits [0, count) into a fixed number of chunks, runs `fn(begin, end)`
// per chunk on worker threads and returns the per-chunk results in chunk
// order. The partition does not depend on the thread count, so ordered
// reductions of the result are reproducible.
template <class T, class Fn>
std::vector<T> ChunkedMap(std::int64_t count, Fn fn, int chunks = 64) {
  if (count <= 0) return {};
  chunks = static_cast<int>(std::min<std::int64_t>(chunks, count));
  std::vector<T> out(chunks);
  auto bounds = [&](int c) { return count * c / chunks; };
  const int workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
  if (workers == 1 || count < 256) {
    for (int c = 0; c < chunks; ++c) out[c] = fn(bounds(c), bounds(c + 1));
    return out;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (int c = t; c < chunks; c += workers) out[c] = fn(bounds(c), bounds(c + 1));
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace gsg::detail
