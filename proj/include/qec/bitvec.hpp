// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qec {

// Fixed-width bit vector over 64-bit words. Width is set at construction;
// all binary operations require equal widths.
struct BitVec {
  int n = 0;
  std::vector<uint64_t> w;

  BitVec() = default;
  explicit BitVec(int nbits) : n(nbits), w((nbits + 63) / 64, 0) {}
  static BitVec from_u64(int nbits, uint64_t bits) {
    BitVec v(nbits);
    if (!v.w.empty()) v.w[0] = bits & v.tail_mask_word0();
    return v;
  }

  bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  void set(int i, bool b) {
    uint64_t m = uint64_t(1) << (i & 63);
    if (b) w[i >> 6] |= m; else w[i >> 6] &= ~m;
  }
  void flip(int i) { w[i >> 6] ^= uint64_t(1) << (i & 63); }

  int popcount() const {
    int c = 0;
    for (uint64_t x : w) c += std::popcount(x);
    return c;
  }
  bool parity() const { return popcount() & 1; }
  bool any() const {
    for (uint64_t x : w) if (x) return true;
    return false;
  }

  BitVec operator^(const BitVec& o) const {
    BitVec r(n);
    for (size_t i = 0; i < w.size(); ++i) r.w[i] = w[i] ^ o.w[i];
    return r;
  }
  BitVec operator&(const BitVec& o) const {
    BitVec r(n);
    for (size_t i = 0; i < w.size(); ++i) r.w[i] = w[i] & o.w[i];
    return r;
  }
  BitVec operator|(const BitVec& o) const {
    BitVec r(n);
    for (size_t i = 0; i < w.size(); ++i) r.w[i] = w[i] | o.w[i];
    return r;
  }
  void operator^=(const BitVec& o) {
    for (size_t i = 0; i < w.size(); ++i) w[i] ^= o.w[i];
  }

  int and_popcount(const BitVec& o) const {
    int c = 0;
    for (size_t i = 0; i < w.size(); ++i) c += std::popcount(w[i] & o.w[i]);
    return c;
  }
  bool and_parity(const BitVec& o) const { return and_popcount(o) & 1; }

  bool operator==(const BitVec& o) const { return n == o.n && w == o.w; }
  // Lexicographic order on the bit string viewed as an integer (bit 0 = LSB).
  bool operator<(const BitVec& o) const {
    for (size_t i = w.size(); i-- > 0;)
      if (w[i] != o.w[i]) return w[i] < o.w[i];
    return false;
  }

  uint64_t to_u64() const {
    if (n > 64) throw std::length_error("BitVec wider than 64 bits");
    return w.empty() ? 0 : w[0];
  }

 private:
  uint64_t tail_mask_word0() const {
    return (n >= 64) ? ~uint64_t(0) : ((uint64_t(1) << n) - 1);
  }
};

}  // namespace qec
