#pragma once

#include <cstdint>
#include <cstdlib>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace syndromest {

// Serial runs the exact same chunk decomposition as Parallel, so the two
// modes produce bit-identical results; Serial is kept as the reference
// implementation for tests and benchmarks.
enum class Exec { Serial, Parallel };

// Number of worker threads: OpenMP's limit, optionally capped by the
// SYNDROMEST_THREADS environment variable.
inline int thread_limit() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
#else
  int n = 1;
#endif
  if (const char* env = std::getenv("SYNDROMEST_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return n;
}

// Fixed chunk count for all reductions. Work is assigned to chunks by index
// and chunk partials are combined in chunk order, so floating-point results
// do not depend on the number of threads.
inline constexpr std::int64_t kReduceChunks = 256;

// body(chunk_index, begin, end) over a fixed decomposition of [0, n).
template <typename F>
void for_each_chunk(Exec exec, std::int64_t n, F&& body) {
  if (n <= 0) return;
  const std::int64_t chunks = n < kReduceChunks ? n : kReduceChunks;
#ifdef _OPENMP
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_limit())
    for (std::int64_t c = 0; c < chunks; ++c) {
      const std::int64_t begin = c * n / chunks;
      const std::int64_t end = (c + 1) * n / chunks;
      body(c, begin, end);
    }
    return;
  }
#else
  (void)exec;
#endif
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::int64_t begin = c * n / chunks;
    const std::int64_t end = (c + 1) * n / chunks;
    body(c, begin, end);
  }
}

// body(i) for i in [0, n); per-item work must be independent.
template <typename F>
void for_each_index(Exec exec, std::int64_t n, F&& body) {
  for_each_chunk(exec, n, [&](std::int64_t, std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) body(i);
  });
}

// Compensated (Kahan) accumulator for the fixed-order reductions.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace syndromest
