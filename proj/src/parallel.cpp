#include "hardy/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace hardy::parallel {

namespace {
std::atomic<int> g_threads{1};
thread_local bool t_inside = false;
}  // namespace

void set_threads(int n) {
  if (n < 1 || n > 1024) throw std::invalid_argument("thread count must be in [1, 1024]");
  g_threads = n;
}

int threads() { return g_threads; }

void for_each(std::size_t n, const std::function<void(std::size_t)>& fn) {
  int T = std::min<std::size_t>(g_threads.load(), n);
  if (T <= 1 || t_inside) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  auto work = [&] {
    t_inside = true;
    for (;;) {
      std::size_t i = next++;
      if (i >= n) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(mu);
        if (!err) err = std::current_exception();
        next = n;
      }
    }
    t_inside = false;
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < T; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace hardy::parallel
