#pragma once

// Minimal parallel-map capability.  The CLI owns the thread budget; library
// code takes a Par value and stays policy-free.  parallel_map writes result
// i of callable f(i) into slot i, so the output is identical for every
// thread count; only the wall time changes.

#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace lfm {

struct Par {
  unsigned threads = 1;

  static Par from_env(unsigned fallback = 1) {
    if (const char* v = std::getenv("NUM_THREADS")) {
      long n = std::strtol(v, nullptr, 10);
      if (n >= 1) return Par{static_cast<unsigned>(n)};
    }
    return Par{fallback};
  }
};

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, const Par& par, F&& f) {
  std::vector<T> out(n);
  unsigned threads = par.threads;
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  if (threads > n) threads = static_cast<unsigned>(n);
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (std::size_t i = t; i < n; i += threads) out[i] = f(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace lfm
