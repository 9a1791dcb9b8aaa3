#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace bipara {

// Thread cap from BIPARA_THREADS; 0 or unset means hardware concurrency.
inline int thread_cap() {
  if (const char* env = std::getenv("BIPARA_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(v);
    if (end != env && v == 0) {
      unsigned hc = std::thread::hardware_concurrency();
      return hc ? static_cast<int>(hc) : 1;
    }
    return 1;  // unparseable or negative: be conservative
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// Runs fn(i) for i in [0, count). Each index must write only to its own
// slots; reductions happen after the join, in index order, so results are
// bitwise independent of the thread count.
inline void parallel_for(std::int64_t count,
                         const std::function<void(std::int64_t)>& fn) {
  if (count <= 0) return;
  int threads = thread_cap();
  if (threads <= 1 || count == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  if (threads > count) threads = static_cast<int>(count);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    std::int64_t lo = count * t / threads;
    std::int64_t hi = count * (t + 1) / threads;
    pool.emplace_back([lo, hi, &fn] {
      for (std::int64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace bipara
