// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "qec/pauli.hpp"

#include <stdexcept>

namespace qec {

PauliOp PauliOp::identity(int n) {
  PauliOp p;
  p.n = n;
  p.x = BitVec(n);
  p.z = BitVec(n);
  p.phase_exp = 0;
  return p;
}

PauliOp PauliOp::hermitian(const BitVec& x, const BitVec& z) {
  PauliOp p;
  p.n = x.n;
  p.x = x;
  p.z = z;
  p.phase_exp = x.and_popcount(z) & 3;
  return p;
}

int PauliOp::weight() const { return (x | z).popcount(); }

bool PauliOp::commutes_with(const PauliOp& o) const {
  return (x.and_popcount(o.z) + z.and_popcount(o.x)) % 2 == 0;
}

bool PauliOp::is_hermitian() const {
  // P^dag = i^{-e} (-1)^{x.z} X(x)Z(z); Hermitian iff e == x.z mod 2.
  return ((phase_exp - x.and_popcount(z)) % 2 + 2) % 2 == 0;
}

bool PauliOp::is_hermitian_canonical() const {
  return phase_exp == (x.and_popcount(z) & 3);
}

PauliOp PauliOp::adjoint() const {
  PauliOp p = *this;
  p.phase_exp = ((-phase_exp + 2 * x.and_popcount(z)) % 4 + 4) % 4;
  return p;
}

PauliOp operator*(const PauliOp& a, const PauliOp& b) {
  if (a.n != b.n) throw std::invalid_argument("PauliOp product: dimension mismatch");
  PauliOp r;
  r.n = a.n;
  r.x = a.x ^ b.x;
  r.z = a.z ^ b.z;
  // X(x1)Z(z1) X(x2)Z(z2) = (-1)^{z1.x2} X(x1^x2) Z(z1^z2)
  int e = a.phase_exp + b.phase_exp + 2 * (a.z.and_popcount(b.x) & 1);
  r.phase_exp = ((e % 4) + 4) % 4;
  return r;
}

PauliOp PauliOp::from_string(std::string_view s) {
  int e_rel = 0;
  size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    bool neg = s[i] == '-';
    ++i;
    if (i < s.size() && s[i] == 'i') {
      e_rel = neg ? 3 : 1;
      ++i;
    } else {
      e_rel = neg ? 2 : 0;
    }
  }
  size_t m = s.size() - i;
  if (m == 0) throw std::invalid_argument("PauliOp: empty operator string");
  BitVec x((int)m), z((int)m);
  for (size_t q = 0; q < m; ++q) {
    switch (s[i + q]) {
      case 'I': break;
      case 'X': x.set((int)q, true); break;
      case 'Z': z.set((int)q, true); break;
      case 'Y': x.set((int)q, true); z.set((int)q, true); break;
      default: throw std::invalid_argument("PauliOp: invalid letter in operator string");
    }
  }
  PauliOp p = PauliOp::hermitian(x, z);
  p.phase_exp = (p.phase_exp + e_rel) & 3;
  return p;
}

std::string PauliOp::str() const {
  int e_rel = ((phase_exp - x.and_popcount(z)) % 4 + 4) % 4;
  static const char* prefix[4] = {"+", "+i", "-", "-i"};
  std::string out = prefix[e_rel];
  out.reserve(out.size() + n);
  for (int q = 0; q < n; ++q) {
    bool bx = x.get(q), bz = z.get(q);
    out += bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
  }
  return out;
}

}  // namespace qec
