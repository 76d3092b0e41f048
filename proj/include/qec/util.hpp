// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace qec {

using cplx = std::complex<double>;

// Compensated (Kahan) accumulator. Used for every reduction with d^4-scale
// term counts so that results are reproducible to ~1e-15 regardless of
// summation length.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    double y = v - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

struct KahanCplx {
  KahanSum re, im;
  void add(cplx v) {
    re.add(v.real());
    im.add(v.imag());
  }
  cplx value() const { return {re.value(), im.value()}; }
};

// i^k for integer k (k mod 4).
inline cplx ipow(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

inline bool near_abs(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Relative comparison with graceful handling of values near zero.
inline bool near_rel(double a, double b, double rtol, double atol = 1e-300) {
  double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= std::max(rtol * scale, atol);
}

inline int env_worker_count() {
  if (const char* s = std::getenv("QEC_WORKERS")) {
    int v = std::atoi(s);
    if (v >= 1) return v;
  }
  return 1;
}

// Deterministic parallel map-reduce: the index range is split into a fixed
// number of chunks (independent of the worker count), each chunk is reduced
// sequentially, and chunk results are combined in index order. Bit-identical
// output for any number of workers.
template <typename Acc>
void parallel_chunks(uint64_t begin, uint64_t end, int workers,
                     const std::function<void(uint64_t, uint64_t, Acc&)>& body,
                     const std::function<void(Acc&)>& combine_in_order) {
  constexpr uint64_t kChunks = 64;
  uint64_t total = end - begin;
  uint64_t chunks = total < kChunks ? (total ? total : 1) : kChunks;
  std::vector<Acc> acc(chunks);
  if (workers <= 1 || chunks == 1) {
    for (uint64_t c = 0; c < chunks; ++c) {
      uint64_t lo = begin + total * c / chunks;
      uint64_t hi = begin + total * (c + 1) / chunks;
      body(lo, hi, acc[c]);
    }
  } else {
    std::vector<std::thread> pool;
    std::atomic<uint64_t> next{0};
    int nw = std::min<uint64_t>(workers, chunks);
    for (int w = 0; w < nw; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          uint64_t c = next.fetch_add(1);
          if (c >= chunks) return;
          uint64_t lo = begin + total * c / chunks;
          uint64_t hi = begin + total * (c + 1) / chunks;
          body(lo, hi, acc[c]);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (uint64_t c = 0; c < chunks; ++c) combine_in_order(acc[c]);
}

}  // namespace qec
