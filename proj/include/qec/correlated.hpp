// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <complex>
#include <vector>

#include "qec/exact.hpp"
#include "qec/util.hpp"

namespace qec::correlated {

// Number of ways to divide 2p objects into p unordered pairs: (2p)!/(2^p p!).
Int kappa(long p);

// Exact value i^i_power * magnitude with magnitude >= 0.
struct PhasedRat {
  Rat magnitude;
  int i_power = 0;  // 0..3
};
PhasedRat canonicalize(Rat value, int i_power);

// Term of the coherent-component double sum at fixed (q, k_R), q = k_L + k_R.
// Requires 0 <= k_R, 2*k_R <= (n-1)/2, q <= (n-1)/2, n odd.
PhasedRat omega_term(long q, long k_R, long n);
// Term of the leading incoherent-component sum. Requires q <= (n+1)/2.
PhasedRat delta_term(long q, long k_R, long n);

// Sums over k_R at fixed q. For odd q these vanish identically.
PhasedRat omega_sum(long q, long n);
PhasedRat delta_sum(long q, long n);

// Closed forms of |omega_sum| and |delta_sum| for even q.
Rat omega_closed(long q, long n);
Rat delta_closed(long q, long n);

struct RatioCheck {
  Rat ratio;          // omega_sum magnitude / delta_sum magnitude
  Rat expected;       // (n+1-2q)/(2n-2q)
  bool equal = false;
  bool bound_ok = false;  // ratio <= (n+1)/(2n)
};
// q even, 0 <= q <= (n-1)/2, q < n.
RatioCheck omega_delta_ratio(long q, long n);

struct DixonCheck {
  Int lhs;  // sum_k (-1)^k C(2m-2q, m-2k) C(q, k)
  Rat rhs;  // (-1)^{q/2} (2m-q)! q! / ((m-q/2)! (q/2)! m!)
  bool holds = false;
};
DixonCheck dixon_sum(long m, long q);  // q even, q <= m

// Terminating 3F2 at unit argument, exact Pochhammer sum. One of a, b, c
// must be a nonpositive integer; throws std::domain_error on a denominator
// pole reached before termination.
Rat hypergeometric_3f2(const Rat& a, const Rat& b, const Rat& c,
                       const Rat& d, const Rat& e);

// Exact rational * sqrt(pi)^k with k in {-?..}: used for the closed
// gamma-product side of the well-poised sum identity. All of 2*arg must be
// positive integers.
Rat dixon_gamma_product(const Rat& a, const Rat& b, const Rat& c);

struct CancellationCensus {
  long q = 0;
  bool high_coeffs_vanish = false;   // coeff of m^{2q-r} is 0 for all 2r < q
  bool leading_matches = false;      // coeff of m^{3q/2} == (-1)^{q/2} 2^q q!/(q/2)!
  std::vector<Rat> coeffs;           // full polynomial in m, degree 2q
};
CancellationCensus cancellation_census(long q);

struct C10Check {
  Int lhs, rhs;
  bool holds = false;
};
// sum_b (-1)^b b^a C(a,b) == (-1)^a a!
C10Check alternating_power_identity(long a);

// Two-body (plus optional n=3 three-body) symmetric X-type Hamiltonian.
struct CorrelatedModel {
  int n = 3;
  double h1 = 0, h2 = 0, h3 = 0;
  bool collisionless_ok() const { return std::abs(n * h2) <= 0.1; }
};

struct LogicalXPair {
  std::complex<double> chi_xx;
  std::complex<double> chi_xi;
};

// Exact dense oracle: e^{-iH} is diagonal in the X basis, amplitudes are
// recovered by a Walsh-Hadamard transform, and majority-vote recovery gives
// the logical chi components. Requires odd n <= 9 and h3 == 0 unless n == 3.
LogicalXPair repcode_logical_chi_dense(const CorrelatedModel& model);

// Collisionless-approximation prediction from the exact rational pipeline.
LogicalXPair collisionless_prediction(int n, double h1, double h2);

struct Theorem2Report {
  LogicalXPair dense;
  double bound_rhs = 0;      // (2n/(n+1)) tan(h1) |chi_XI|
  double slack_factor = 0;   // chi_XX / bound_rhs
  bool bound_ok = false;     // chi_XX >= bound_rhs * (1 - 3 n h2)
  bool collisionless_flagged = false;
};
Theorem2Report theorem2_check(const CorrelatedModel& model);

}  // namespace qec::correlated
