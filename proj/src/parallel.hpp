// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace thompson::detail {

/// Smallest i in [0, n) with fails(i), or n. Workers scan contiguous chunks
/// in ascending order, so the answer does not depend on scheduling.
inline std::uint64_t first_failure(std::uint64_t n, unsigned workers,
                                   const std::function<bool(std::uint64_t)>& fails) {
  workers = std::max(1u, workers);
  if (workers == 1 || n < 2) {
    for (std::uint64_t i = 0; i < n; ++i)
      if (fails(i)) return i;
    return n;
  }
  std::atomic<std::uint64_t> best{n};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::uint64_t lo = n * w / workers;
      const std::uint64_t hi = n * (w + 1) / workers;
      try {
        for (std::uint64_t i = lo; i < hi && i < best.load(); ++i) {
          if (!fails(i)) continue;
          std::uint64_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          return;
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return best.load();
}

}  // namespace thompson::detail
