#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace trigroots::detail {

/// Splits [0, total) into fixed chunks of `chunk` trials and evaluates
/// `work(begin, end)` for each, on up to `threads` threads.
///
/// The chunk boundaries depend only on (total, chunk), and results come back
/// indexed by chunk, so a reduction over the returned vector in order is
/// independent of the thread count and of scheduling.
template <typename Result, typename Work>
std::vector<Result> map_chunks(std::int64_t total, std::int64_t chunk, int threads, Work&& work) {
  const std::int64_t chunks = total <= 0 ? 0 : (total + chunk - 1) / chunk;
  std::vector<Result> results(static_cast<std::size_t>(chunks));
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto drain = [&] {
    for (;;) {
      const std::int64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        const std::int64_t begin = c * chunk;
        results[static_cast<std::size_t>(c)] = work(begin, std::min(total, begin + chunk));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(chunks);
        return;
      }
    }
  };

  const int workers = static_cast<int>(std::clamp<std::int64_t>(threads, 1, std::max<std::int64_t>(chunks, 1)));
  if (workers == 1) {
    drain();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace trigroots::detail
