#include "core/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace specsmooth {

namespace {
std::atomic<int> g_thread_limit{0};
}

void set_thread_limit(int limit) { g_thread_limit.store(std::max(limit, 0)); }

int thread_limit() { return g_thread_limit.load(); }

unsigned effective_threads() {
  const int limit = g_thread_limit.load();
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return limit == 0 ? hw : std::min<unsigned>(hw, static_cast<unsigned>(limit));
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  const std::size_t workers = std::min<std::size_t>(effective_threads(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = count * w / workers;
      const std::size_t end = count * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] {
        for (std::size_t i = begin; i < end; ++i) {
          try {
            body(i);
          } catch (...) {
            errors[w] = std::current_exception();
            return;
          }
        }
      });
    }
  }
  // chunks are ordered, so the first failing worker holds the smallest index
  for (std::size_t w = 0; w < workers; ++w) {
    if (errors[w]) std::rethrow_exception(errors[w]);
  }
}

}  // namespace specsmooth
