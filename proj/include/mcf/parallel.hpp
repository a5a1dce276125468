#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mcf {

// Evaluates fn(trial) for trial = 0..trials-1 on up to `threads` workers and
// returns results indexed by trial. The result never depends on `threads`.
template <class Result, class Fn>
std::vector<Result> run_trials(std::size_t trials, unsigned threads, Fn&& fn) {
  std::vector<Result> results(trials);
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::size_t>(threads == 0 ? 1 : threads, 1, std::max<std::size_t>(trials, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (std::size_t t = next++; t < trials; t = next++) {
      try {
        results[t] = fn(t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = trials;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace mcf
