// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "qec/stabilizer.hpp"

#include <mutex>
#include <stdexcept>

namespace qec {

namespace {

BitVec symplectic_row(const PauliOp& p) {
  BitVec v(2 * p.n);
  for (int i = 0; i < p.n; ++i) {
    if (p.x.get(i)) v.set(i, true);
    if (p.z.get(i)) v.set(p.n + i, true);
  }
  return v;
}

}  // namespace

uint64_t StabilizerCode::syndrome_bits(const PauliOp& p) const {
  if (generators.size() > 64) throw std::length_error("syndrome wider than 64 bits");
  uint64_t s = 0;
  for (size_t a = 0; a < generators.size(); ++a)
    if (!p.commutes_with(generators[a])) s |= uint64_t(1) << a;
  return s;
}

int StabilizerCode::logical_class_of(const PauliOp& p) const {
  int idx = 0;
  for (int i = 0; i < k; ++i) {
    if (!p.commutes_with(logical_z[i])) idx |= 1 << i;            // X_i content
    if (!p.commutes_with(logical_x[i])) idx |= 1 << (k + i);      // Z_i content
  }
  return idx;
}

void StabilizerCode::build_logical_reps() {
  logical_reps.assign(size_t(1) << (2 * k), PauliOp());
  for (int a = 0; a < (1 << (2 * k)); ++a) {
    BitVec x(n), z(n);
    for (int i = 0; i < k; ++i) {
      if (a & (1 << i)) {
        x ^= logical_x[i].x;
        z ^= logical_x[i].z;
      }
      if (a & (1 << (k + i))) {
        x ^= logical_z[i].x;
        z ^= logical_z[i].z;
      }
    }
    logical_reps[a] = PauliOp::hermitian(x, z);
  }
}

void StabilizerCode::validate() const {
  for (size_t i = 0; i < generators.size(); ++i)
    for (size_t j = i + 1; j < generators.size(); ++j)
      if (!generators[i].commutes_with(generators[j]))
        throw std::logic_error("stabilizer generators do not commute");
  for (const auto& g : generators) {
    for (int i = 0; i < k; ++i) {
      if (!g.commutes_with(logical_x[i]) || !g.commutes_with(logical_z[i]))
        throw std::logic_error("logical operator anticommutes with a generator");
    }
  }
  for (int i = 0; i < k; ++i) {
    if (logical_x[i].commutes_with(logical_z[i]))
      throw std::logic_error("logical X/Z pair must anticommute");
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      if (!logical_x[i].commutes_with(logical_z[j]) ||
          !logical_x[i].commutes_with(logical_x[j]))
        throw std::logic_error("logical operators of distinct qubits must commute");
    }
  }
}

const StabilizerCode::Gf2Basis& StabilizerCode::gf2_basis() const {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (basis_) return *basis_;
  Gf2Basis b;
  for (size_t g = 0; g < generators.size(); ++g) {
    BitVec row = symplectic_row(generators[g]);
    BitVec coeff((int)generators.size());
    coeff.set((int)g, true);
    for (size_t r = 0; r < b.rows.size(); ++r) {
      if (row.get(b.pivots[r])) {
        row ^= b.rows[r];
        coeff ^= b.coeffs[r];
      }
    }
    int pivot = -1;
    for (int i = 0; i < row.n; ++i)
      if (row.get(i)) {
        pivot = i;
        break;
      }
    if (pivot < 0) throw std::logic_error("dependent stabilizer generator");
    b.rows.push_back(row);
    b.coeffs.push_back(coeff);
    b.pivots.push_back(pivot);
  }
  basis_ = std::move(b);
  return *basis_;
}

PauliDecomposition StabilizerCode::decompose(const PauliOp& p) const {
  if (p.n != n) throw std::invalid_argument("decompose: dimension mismatch");
  PauliDecomposition d;
  d.syndrome = syndrome_bits(p);
  auto it = syndrome_table.find(d.syndrome);
  if (it == syndrome_table.end())
    throw std::out_of_range("decompose: syndrome missing from standard-error table");
  const PauliOp& e = it->second.error;

  PauliOp r = e * p;  // e is Hermitian-canonical and squares to +I
  d.logical_index = logical_class_of(r);
  PauliOp g = logical_reps[d.logical_index] * r;

  const Gf2Basis& b = gf2_basis();
  BitVec v = symplectic_row(g);
  BitVec coeffs((int)generators.size());
  for (size_t rr = 0; rr < b.rows.size(); ++rr) {
    if (v.get(b.pivots[rr])) {
      v ^= b.rows[rr];
      coeffs ^= b.coeffs[rr];
    }
  }
  if (v.any()) throw std::logic_error("decompose: residue outside the stabilizer span");
  d.stabilizer_coeffs = coeffs;

  PauliOp w = recompose_phaseless(d);
  d.eta_exp = ((p.phase_exp - w.phase_exp) % 4 + 4) % 4;
  return d;
}

PauliOp StabilizerCode::recompose_phaseless(const PauliDecomposition& d) const {
  PauliOp w = syndrome_table.at(d.syndrome).error * logical_reps[d.logical_index];
  for (size_t g = 0; g < generators.size(); ++g)
    if (d.stabilizer_coeffs.get((int)g)) w = w * generators[g];
  return w;
}

PauliOp StabilizerCode::recompose(const PauliDecomposition& d) const {
  PauliOp w = recompose_phaseless(d);
  w.phase_exp = (w.phase_exp + d.eta_exp) & 3;
  return w;
}

}  // namespace qec
