#include "brnr/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace brnr::parallel {

namespace {
int g_threads = 0;  // 0 = hardware default
}

void set_threads(int n) { g_threads = n < 0 ? 0 : n; }

int threads() {
  if (g_threads > 0) return g_threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw > 8 ? 8 : hw);
}

void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn) {
  int nt = threads();
  if (nt <= 1 || count <= 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  if (nt > count) nt = static_cast<int>(count);
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::int64_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace brnr::parallel
