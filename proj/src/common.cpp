#include "mrli/common.h"

#include <cstdlib>
#include <thread>

namespace mrli {

int worker_thread_count() {
  static const int count = [] {
    const char* env = std::getenv("MRLI_THREADS");
    if (!env) return 1;
    const int v = std::atoi(env);
    if (v < 1) return 1;
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    return hw > 0 ? std::min(v, hw) : v;
  }();
  return count;
}

void parallel_for(int count, const std::function<void(int)>& fn) {
  const int workers = std::min(worker_thread_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace mrli
