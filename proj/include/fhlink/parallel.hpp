// parallel.hpp - thread-count-invariant work distribution.
//
// Results must not depend on --threads, so parallelism is restricted to two
// shapes whose combination is order-independent:
//   * count_over_indices: sum of per-index integer counts (exact in uint64)
//   * fill_over_indices:  each index writes only its own preallocated slot
// Every trial derives its randomness from its index, never from the worker
// that happens to run it.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

namespace fhlink {

// Sums fn(i) for i in [0, n) over `threads` workers on contiguous chunks.
// fn must be a pure function of i returning a non-negative count.
template <typename F>
std::uint64_t count_over_indices(std::uint64_t n, int threads, F&& fn) {
  if (threads < 1) throw std::invalid_argument("count_over_indices: threads < 1");
  if (n == 0) return 0;
  const std::uint64_t workers =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), n);
  if (workers == 1) {
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < n; ++i) total += fn(i);
    return total;
  }
  std::vector<std::uint64_t> partial(workers, 0);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = n / workers;
  const std::uint64_t rem = n % workers;
  std::uint64_t begin = 0;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t end = begin + chunk + (w < rem ? 1 : 0);
    pool.emplace_back([&fn, &partial, w, begin, end]() {
      std::uint64_t local = 0;
      for (std::uint64_t i = begin; i < end; ++i) local += fn(i);
      partial[w] = local;
    });
    begin = end;
  }
  for (auto& t : pool) t.join();
  std::uint64_t total = 0;
  for (std::uint64_t v : partial) total += v;
  return total;
}

// Runs fn(i) for i in [0, n); fn writes only to slot i of caller-owned storage.
template <typename F>
void fill_over_indices(std::uint64_t n, int threads, F&& fn) {
  if (threads < 1) throw std::invalid_argument("fill_over_indices: threads < 1");
  if (n == 0) return;
  const std::uint64_t workers =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), n);
  if (workers == 1) {
    for (std::uint64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = n / workers;
  const std::uint64_t rem = n % workers;
  std::uint64_t begin = 0;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t end = begin + chunk + (w < rem ? 1 : 0);
    pool.emplace_back([&fn, begin, end]() {
      for (std::uint64_t i = begin; i < end; ++i) fn(i);
    });
    begin = end;
  }
  for (auto& t : pool) t.join();
}

}  // namespace fhlink
