#include "sepkit/parallel.hpp"

#include <algorithm>
#include <atomic>

namespace sepkit {

namespace {
std::atomic<unsigned> g_max_threads{0};
}

void set_max_threads(unsigned n) { g_max_threads.store(n); }

unsigned effective_threads() {
  unsigned cap = g_max_threads.load();
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return cap == 0 ? hw : std::min(cap, hw);
}

void parallel_chunks(std::size_t count,
                     const std::function<void(unsigned, std::size_t, std::size_t)>& fn) {
  unsigned workers = effective_threads();
  if (count == 0) return;
  if (workers <= 1 || count == 1) {
    fn(0, 0, count);
    return;
  }
  std::size_t n_chunks = std::min<std::size_t>(workers, count);
  std::size_t per = (count + n_chunks - 1) / n_chunks;
  std::vector<std::thread> pool;
  pool.reserve(n_chunks);
  for (std::size_t c = 0; c < n_chunks; ++c) {
    std::size_t b = c * per;
    std::size_t e = std::min(count, b + per);
    if (b >= e) break;
    pool.emplace_back(fn, static_cast<unsigned>(c), b, e);
  }
  for (auto& t : pool) t.join();
}

}  // namespace sepkit
