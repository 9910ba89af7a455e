#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sphex {

/// Run body(task) for task in [0, tasks) on up to hardware_concurrency threads.
/// Tasks are claimed from a shared counter, so results must be written by
/// task index for the outcome to be independent of scheduling. The first
/// exception thrown by any task is rethrown on the caller's thread.
template <class Body>
void parallel_for(std::size_t tasks, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(tasks, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t t = 0; t < tasks; ++t) body(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    try {
      for (std::size_t t = next++; t < tasks; t = next++) body(t);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = tasks;
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace sphex
