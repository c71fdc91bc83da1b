#ifndef BBM_PARALLEL_HPP
#define BBM_PARALLEL_HPP

#include <cstdlib>
#include <thread>
#include <vector>

namespace bbm {

/// Worker count: BBMLAB_THREADS env var if set, else hardware concurrency.
inline int default_threads() {
  if (const char* env = std::getenv("BBMLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Static block partition of [0, n); results must be written to
/// index-addressed slots so the output is independent of scheduling.
template <class F>
void parallel_for(std::size_t n, int threads, F&& f) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  const std::size_t nt = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (std::size_t w = 0; w < nt; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += nt) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace bbm

#endif
