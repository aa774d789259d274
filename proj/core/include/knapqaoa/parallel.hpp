// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace knapqaoa {

/// Runs fn(i) for i in [0, count) across up to hardware_concurrency threads.
/// Results must be written to per-index slots by the caller; reductions stay
/// deterministic because no ordering-dependent state is shared. The first
/// exception thrown by any worker is rethrown on the calling thread.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                         bool parallel = true) {
  if (count == 0) return;
  std::size_t workers = parallel ? std::thread::hardware_concurrency() : 1;
  workers = std::min<std::size_t>(std::max<std::size_t>(workers, 1), count);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::once_flag error_once;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::call_once(error_once, [&] { error = std::current_exception(); });
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace knapqaoa
