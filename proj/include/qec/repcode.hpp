// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "qec/channel.hpp"
#include "qec/exact.hpp"
#include "qec/stabilizer.hpp"

namespace qec::repcode {

// Length-n bit-flip code, n odd: generators Z_i Z_{i+1}, logical X = X^n,
// logical Z = Z_0. The syndrome table (majority-vote standard errors) is
// built exhaustively for n <= 21.
StabilizerCode make_repetition_code(int n);

struct EpsDelta {
  double eps = 0;
  double delta = 0;
};

// Closed forms for the logical rotation/dephasing parameters under uniform
// X-axis rotation by theta on every qubit. Exact binomials, floats last.
EpsDelta logical_eps_delta_closed(int n, double theta);

// Logical chi matrix (single logical qubit) from full enumeration of the
// 2^n X-type error strings, grouped by syndrome, majority-vote recovery.
// Per-qubit angles; n = angles.size() must be odd and <= 25.
ChiMatrix logical_chi_enumerate(const std::vector<double>& angles, int workers = 1);

// Reads (eps, delta) off a single-qubit logical chi matrix in the
// rotation/dephasing form: chi_XX = eps/2, chi_XI = -i delta/2.
EpsDelta eps_delta_from_chi(const ChiMatrix& chi);

// Large-n approximations; requires sin^2(theta/2) < 1/2.
EpsDelta theorem1_asymptotics(int n, double theta);

struct DecodingError {
  double exact = 0;
  double approx = 0;
};
// Probability that majority voting fails for i.i.d. flip probability p.
DecodingError decoding_error_probability(int n, double p);

struct MinimizeWitness {
  double symmetric_value = 0;  //  f_m at x_i = c^{1/n}
  double min_sampled = 0;
  long violations = 0;         // samples with f < symmetric_value - 1e-12
  double perturbed_increase = 0;  // f(perturbed) - f(symmetric), constraint kept
};
// Random search witness that f_m(x) = sum_{|S|=m} prod_S x is minimized at
// the symmetric point subject to prod x = c.
MinimizeWitness minimize_fm_witness(int n, int m, double c, long samples, uint64_t seed);

struct AlternatingIdentity {
  Int lhs, rhs;
  bool holds = false;
};
// sum_{w=0}^{(n-1)/2} (-1)^w C(n,w) == (-1)^{(n-1)/2} C(n-1,(n-1)/2), n odd.
AlternatingIdentity binomial_alternating_identity(int n);

// Elementary symmetric polynomial e_m(x), the sum over all m-subsets.
double elementary_symmetric(const std::vector<double>& x, int m);

}  // namespace qec::repcode
