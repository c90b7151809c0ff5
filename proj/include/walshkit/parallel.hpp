#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace walshkit {

// Runs fn(i) for i in [0, count), spreading chunks over hardware threads.
// Results must be written to per-index slots; the schedule is not part of the
// output, so reports stay byte-identical regardless of thread count.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t grain = 1) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers <= 1 || count <= grain) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto run = [&] {
    for (;;) {
      std::size_t start = next.fetch_add(grain);
      if (start >= count || failed.load()) return;
      std::size_t stop = std::min(count, start + grain);
      try {
        for (std::size_t i = start; i < stop; ++i) fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace walshkit
