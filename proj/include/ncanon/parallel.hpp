#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace ncanon {

namespace detail {
inline std::atomic<std::size_t>& thread_setting() {
  static std::atomic<std::size_t> n{1};
  return n;
}
}  // namespace detail

/// Worker threads used by checkers that split their instance space. Results
/// are always merged in chunk order, so reports do not depend on this value.
inline std::size_t thread_count() { return detail::thread_setting().load(); }
inline void set_thread_count(std::size_t n) { detail::thread_setting().store(std::max<std::size_t>(1, n)); }

/// Reads NCANON_THREADS; leaves the setting alone when unset or malformed.
inline void configure_threads_from_env() {
  if (const char* v = std::getenv("NCANON_THREADS")) {
    try {
      const long n = std::stol(v);
      if (n > 0) set_thread_count(static_cast<std::size_t>(n));
    } catch (...) {
    }
  }
}

/// Splits [0, n) into contiguous chunks and calls fn(begin, end, chunk) for
/// each, on up to thread_count() threads. Returns the number of chunks.
template <class Fn>
std::size_t parallel_chunks(std::size_t n, Fn&& fn) {
  const std::size_t threads = std::min(thread_count(), std::max<std::size_t>(n, 1));
  if (threads <= 1) {
    fn(std::size_t{0}, n, std::size_t{0});
    return 1;
  }
  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  std::size_t chunks = 0;
  for (std::size_t b = 0; b < n; b += chunk, ++chunks) {
    const std::size_t e = std::min(n, b + chunk);
    pool.emplace_back([&fn, b, e, c = chunks] { fn(b, e, c); });
  }
  for (auto& t : pool) t.join();
  return chunks;
}

}  // namespace ncanon
