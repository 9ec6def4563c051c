#ifndef ORRLAB_PARALLEL_HPP
#define ORRLAB_PARALLEL_HPP

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace orrlab {

// Worker cap: ORRLAB_THREADS when set, hardware concurrency otherwise.
inline int worker_count() {
  if (const char* env = std::getenv("ORRLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, n).  Each index must write only its own slots;
// reductions belong to the (serial) caller, which keeps results identical
// for every thread count.
inline void parallel_for(long n, const std::function<void(long)>& fn) {
  const int workers = std::min<long>(worker_count(), n);
  if (workers <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (long i = w; i < n; i += workers) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace orrlab

#endif
