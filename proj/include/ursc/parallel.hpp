#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace ursc {

/// Runs fn(task) for every task in [0, n_tasks) across `workers` threads.
///
/// Tasks are split into contiguous chunks by index, so which thread runs a
/// task is a pure function of (n_tasks, workers); results must be written to
/// per-task slots owned by the caller, which makes the overall output
/// independent of scheduling and of the worker count.
template <typename Fn>
void parallel_tasks(std::int64_t n_tasks, int workers, Fn&& fn) {
  if (n_tasks <= 0) return;
  const int use = static_cast<int>(
      std::max<std::int64_t>(1, std::min<std::int64_t>(workers, n_tasks)));
  if (use == 1) {
    for (std::int64_t i = 0; i < n_tasks; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(use));
  const std::int64_t chunk = (n_tasks + use - 1) / use;
  for (int w = 0; w < use; ++w) {
    const std::int64_t lo = w * chunk;
    const std::int64_t hi = std::min(n_tasks, lo + chunk);
    pool.emplace_back([lo, hi, &fn] {
      for (std::int64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

/// Tracks the smallest task index that produced a hit.  Workers consult
/// `cutoff()` to skip tasks that can no longer win; the final value is the
/// deterministic minimum regardless of thread interleaving.
class FirstHit {
 public:
  static constexpr std::int64_t kNone = INT64_MAX;

  void offer(std::int64_t task) {
    std::int64_t cur = best_.load(std::memory_order_relaxed);
    while (task < cur &&
           !best_.compare_exchange_weak(cur, task, std::memory_order_relaxed)) {
    }
  }

  std::int64_t cutoff() const { return best_.load(std::memory_order_relaxed); }
  bool found() const { return cutoff() != kNone; }

 private:
  std::atomic<std::int64_t> best_{kNone};
};

}  // namespace ursc
