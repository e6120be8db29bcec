#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace hsmc::detail {

// Least index in [0,n) for which test(worker, index) is true, or n.
// Each thread owns one worker built by make(); results do not depend on jobs.
template <class Make, class Test>
std::size_t first_index(std::size_t n, int jobs, Make make, Test test) {
  std::atomic<std::size_t> next{0}, best{n};
  auto run = [&] {
    auto worker = make();
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n || i >= best.load()) return;
      if (test(worker, i)) {
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  int threads = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (threads == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }
  return best.load();
}

}  // namespace hsmc::detail
