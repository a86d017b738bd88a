#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace splitlab {

// Runs fn(i) for i in [0, count) across `threads` workers on static strides.
// Callers collect per-index results and reduce in index order, so outcomes
// do not depend on the thread count.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const int workers = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&fn, w, workers, count] {
      for (std::size_t i = static_cast<std::size_t>(w); i < count;
           i += static_cast<std::size_t>(workers))
        fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace splitlab
