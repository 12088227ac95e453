#pragma once

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace impred {

// Worker count for parallel loops: IMPRED_THREADS if set, else hardware.
inline int default_worker_count() {
  if (const char* env = std::getenv("IMPRED_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// Runs body(i) for i in [0, n) over contiguous index blocks. Results must be
// written into per-index slots; with that discipline the output is identical
// for every worker count. The lowest-index exception wins and is rethrown.
template <class F>
void parallel_for(std::size_t n, F&& body, int workers = 0) {
  if (workers <= 0) workers = default_worker_count();
  if (n == 0) return;
  if (workers == 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::size_t w = std::min<std::size_t>(workers, n);
  std::vector<std::exception_ptr> errs(w);
  std::vector<std::size_t> err_index(w, static_cast<std::size_t>(-1));
  std::vector<std::thread> pool;
  pool.reserve(w);
  std::size_t chunk = n / w, extra = n % w, begin = 0;
  for (std::size_t t = 0; t < w; ++t) {
    std::size_t end = begin + chunk + (t < extra ? 1 : 0);
    pool.emplace_back([&, t, begin, end] {
      for (std::size_t i = begin; i < end; ++i) {
        try {
          body(i);
        } catch (...) {
          errs[t] = std::current_exception();
          err_index[t] = i;
          return;
        }
      }
    });
    begin = end;
  }
  for (auto& th : pool) th.join();
  std::size_t first = static_cast<std::size_t>(-1);
  std::exception_ptr eptr;
  for (std::size_t t = 0; t < w; ++t)
    if (errs[t] && err_index[t] < first) {
      first = err_index[t];
      eptr = errs[t];
    }
  if (eptr) std::rethrow_exception(eptr);
}

}  // namespace impred
