//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RETRO_TOOLS_CLI_PARALLEL_H_
#define RETRO_TOOLS_CLI_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace retro::cli {

template <class R, class Fn>
std::vector<R> parallel_map(int n, int jobs, Fn fn) {
  std::vector<std::optional<R>> slots(n);
  std::atomic<int> next { 0 };
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure)
          failure = std::current_exception();
        next = n;
      }
    }
  };
  const int threads = std::clamp(jobs, 1, std::max(n, 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(worker);
    for (std::thread &t: pool)
      t.join();
  }
  if (failure)
    std::rethrow_exception(failure);
  std::vector<R> out;
  out.reserve(n);
  for (auto &s: slots)
    out.push_back(std::move(*s));
  return out;
}

}  // namespace retro::cli

#endif  // RETRO_TOOLS_CLI_PARALLEL_H_
