#pragma once

#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace periscreen {

// Splits [0, count) into `threads` contiguous chunks and runs fn(first, last)
// for each, concurrently. With threads <= 1 (or a short range) runs inline.
// The partition depends only on (count, threads), never on scheduling, so any
// caller that writes results indexed by position gets deterministic output.
// The first exception thrown by a worker is rethrown after all threads join.
inline void parallel_chunks(long count, int threads,
                            const std::function<void(long, long)>& fn) {
  if (count <= 0) return;
  const long nthreads = std::min<long>(std::max(threads, 1), count);
  if (nthreads == 1) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  std::exception_ptr first_error;
  std::mutex error_mu;
  const long base = count / nthreads, extra = count % nthreads;
  long start = 0;
  for (long t = 0; t < nthreads; ++t) {
    const long len = base + (t < extra ? 1 : 0);
    const long first = start, last = start + len;
    start = last;
    pool.emplace_back([&, first, last] {
      try {
        fn(first, last);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace periscreen
