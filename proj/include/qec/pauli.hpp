// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <string>
#include <string_view>

#include "qec/bitvec.hpp"

namespace qec {

// An n-qubit Pauli operator i^phase_exp * X(x) Z(z), with exact phase
// tracking modulo i^4. The Hermitian-canonical form carries
// phase_exp == popcount(x & z) mod 4, which makes every Y factor Hermitian.
struct PauliOp {
  int n = 0;
  BitVec x, z;
  int phase_exp = 0;  // mod 4

  PauliOp() = default;
  static PauliOp identity(int n);
  // Hermitian-canonical operator with the given supports.
  static PauliOp hermitian(const BitVec& x, const BitVec& z);
  // Parses a string over {I,X,Y,Z} with optional prefix in {+,-,+i,-i}.
  // Leftmost letter is qubit 0. Throws std::invalid_argument on bad input.
  static PauliOp from_string(std::string_view s);

  std::string str() const;
  int weight() const;
  bool commutes_with(const PauliOp& o) const;
  bool is_hermitian() const;
  bool is_hermitian_canonical() const;
  bool is_identity_up_to_phase() const { return !x.any() && !z.any(); }
  PauliOp adjoint() const;

  bool operator==(const PauliOp& o) const {
    return n == o.n && phase_exp == o.phase_exp && x == o.x && z == o.z;
  }
};

// Exact operator product; throws std::invalid_argument on dimension mismatch.
PauliOp operator*(const PauliOp& a, const PauliOp& b);

// --- Single-word fast path ------------------------------------------------
// Product phase bookkeeping on packed (x, z) masks for n <= 64, used by the
// enumeration kernels. Both inputs and the result are Hermitian-canonical;
// returns the i-power of the product relative to the canonical result.
inline int mul_phase_exp_u64(uint64_t x1, uint64_t z1, uint64_t x2, uint64_t z2) {
  int e1 = std::popcount(x1 & z1);
  int e2 = std::popcount(x2 & z2);
  int cross = 2 * (std::popcount(z1 & x2) & 1);
  int ec = std::popcount((x1 ^ x2) & (z1 ^ z2));
  return ((e1 + e2 + cross - ec) % 4 + 4) % 4;
}

}  // namespace qec
