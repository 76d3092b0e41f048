// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "qec/pauli.hpp"

namespace qec {

// sigma = i^eta_exp * E_s * L_a * G_x with all three factors
// Hermitian-canonical standard representatives.
struct PauliDecomposition {
  uint64_t syndrome = 0;      // packed syndrome bits, generator order
  int logical_index = 0;      // bits (x_1..x_k, z_1..z_k), x low
  BitVec stabilizer_coeffs;   // GF(2) coefficients over the generator list
  int eta_exp = 0;            // i^eta_exp, in {0,1,2,3}
};

struct SyndromeEntry {
  PauliOp error;
  // Set when the minimal weight for this syndrome is achieved in more than
  // one logical class, so the standard-error convention is load-bearing.
  bool class_ambiguous = false;
};

// An [[n, k]] stabilizer code with fixed standard representatives: ordered
// generator list, one bare X/Z logical pair per encoded qubit, canonical
// products for all 4^k logical classes, and a syndrome -> standard error map.
struct StabilizerCode {
  int n = 0;
  int k = 0;
  std::vector<PauliOp> generators;
  std::vector<PauliOp> logical_x;     // k entries
  std::vector<PauliOp> logical_z;     // k entries
  std::vector<PauliOp> logical_reps;  // 4^k canonical representatives
  std::unordered_map<uint64_t, SyndromeEntry> syndrome_table;

  int num_syndrome_bits() const { return (int)generators.size(); }

  // Bit alpha set iff P anticommutes with generators[alpha]. Requires
  // n - k <= 64 for the packed form.
  uint64_t syndrome_bits(const PauliOp& p) const;

  // Logical class of an operator with trivial syndrome, detected through
  // commutation with the dual logical representatives.
  int logical_class_of(const PauliOp& p) const;

  void build_logical_reps();
  // Checks pairwise generator commutation, generator/logical commutation and
  // the logical symplectic pairing. Throws std::logic_error on violation.
  void validate() const;

  PauliDecomposition decompose(const PauliOp& p) const;
  PauliOp recompose(const PauliDecomposition& d) const;

 private:
  PauliOp recompose_phaseless(const PauliDecomposition& d) const;

  // Row-reduced generator (x|z) rows for expressing trivial-class operators
  // over the generator list. Built once on first use behind a lock, so
  // concurrent decompose calls stay safe.
  struct Gf2Basis {
    std::vector<BitVec> rows;    // reduced rows, 2n bits
    std::vector<BitVec> coeffs;  // generator combinations producing each row
    std::vector<int> pivots;
  };
  mutable std::optional<Gf2Basis> basis_;
  const Gf2Basis& gf2_basis() const;
};

}  // namespace qec
