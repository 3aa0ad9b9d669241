#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace hardy::parallel {

void set_threads(int n);
int threads();

// Runs fn(i) for i in [0, n). Work is distributed dynamically, so callers
// must write results by index only; nested calls run serially.
void for_each(std::size_t n, const std::function<void(std::size_t)>& fn);

template <class T>
T pairwise(const T* v, std::size_t n) {
  if (n == 0) return T{};
  if (n <= 8) {
    T s = v[0];
    for (std::size_t i = 1; i < n; ++i) s += v[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise(v, h) + pairwise(v + h, n - h);
}

constexpr std::size_t kBlock = 512;

// Deterministic sum of f(0..n-1): fixed blocks, pairwise inside and across
// blocks, independent of the thread count.
template <class T, class F>
T block_sum(std::size_t n, F&& f) {
  std::size_t nb = (n + kBlock - 1) / kBlock;
  std::vector<T> part(nb);
  for_each(nb, [&](std::size_t b) {
    std::size_t lo = b * kBlock, hi = std::min(n, lo + kBlock);
    T buf[kBlock];
    for (std::size_t i = lo; i < hi; ++i) buf[i - lo] = f(i);
    part[b] = pairwise(buf, hi - lo);
  });
  return pairwise(part.data(), nb);
}

}  // namespace hardy::parallel
