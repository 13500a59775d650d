#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lcq::par {

enum class Exec { Serial, Parallel };

inline int max_workers() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_workers(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

inline constexpr int64_t kBlock = 4096;

// Deterministic sum of fn(0..count-1). Samples are accumulated per fixed-size
// block in index order and blocks are combined in block order, so the result
// is bit-identical for any worker count. The block size is a property of the
// call site, never of the thread count. The OpenMP path parallelises over
// blocks; the serial path is the reference implementation kept for testing.
template <typename Fn>
double block_sum(int64_t count, Fn&& fn, Exec exec = Exec::Parallel, int64_t block = kBlock) {
  if (count <= 0) return 0.0;
  const int64_t nblocks = (count + block - 1) / block;
  std::vector<double> partial(static_cast<size_t>(nblocks), 0.0);
  auto body = [&](int64_t b) {
    const int64_t lo = b * block;
    const int64_t hi = std::min(count, lo + block);
    double s = 0.0;
    for (int64_t i = lo; i < hi; ++i) s += fn(i);
    partial[static_cast<size_t>(b)] = s;
  };
  if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (int64_t b = 0; b < nblocks; ++b) body(b);
  } else {
    for (int64_t b = 0; b < nblocks; ++b) body(b);
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

// Same contract for (sum of values, sum of squares), the common case for
// mean/stderr bookkeeping.
template <typename Fn>
std::pair<double, double> block_sum2(int64_t count, Fn&& fn, Exec exec = Exec::Parallel,
                                     int64_t block = kBlock) {
  if (count <= 0) return {0.0, 0.0};
  const int64_t nblocks = (count + block - 1) / block;
  std::vector<double> ps(static_cast<size_t>(nblocks), 0.0), ps2(static_cast<size_t>(nblocks), 0.0);
  auto body = [&](int64_t b) {
    const int64_t lo = b * block;
    const int64_t hi = std::min(count, lo + block);
    double s = 0.0, s2 = 0.0;
    for (int64_t i = lo; i < hi; ++i) {
      const double v = fn(i);
      s += v;
      s2 += v * v;
    }
    ps[static_cast<size_t>(b)] = s;
    ps2[static_cast<size_t>(b)] = s2;
  };
  if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (int64_t b = 0; b < nblocks; ++b) body(b);
  } else {
    for (int64_t b = 0; b < nblocks; ++b) body(b);
  }
  double s = 0.0, s2 = 0.0;
  for (int64_t b = 0; b < nblocks; ++b) {
    s += ps[static_cast<size_t>(b)];
    s2 += ps2[static_cast<size_t>(b)];
  }
  return {s, s2};
}

// Deterministic element-wise fill: out[i] = fn(i). Used for per-subspace or
// per-direction work where each item is expensive (block of 1).
template <typename T, typename Fn>
void block_fill(std::vector<T>& out, Fn&& fn, Exec exec = Exec::Parallel) {
  const int64_t count = static_cast<int64_t>(out.size());
  if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (int64_t i = 0; i < count; ++i) out[static_cast<size_t>(i)] = fn(i);
  } else {
    for (int64_t i = 0; i < count; ++i) out[static_cast<size_t>(i)] = fn(i);
  }
}

}  // namespace lcq::par
