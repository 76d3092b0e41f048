// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "qec/repcode.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qec::repcode {

namespace {

void require_odd(int n) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("repetition code length must be odd and >= 3");
}

}  // namespace

StabilizerCode make_repetition_code(int n) {
  require_odd(n);
  StabilizerCode code;
  code.n = n;
  code.k = 1;
  for (int i = 0; i + 1 < n; ++i) {
    BitVec z(n);
    z.set(i, true);
    z.set(i + 1, true);
    code.generators.push_back(PauliOp::hermitian(BitVec(n), z));
  }
  {
    BitVec x(n);
    for (int i = 0; i < n; ++i) x.set(i, true);
    code.logical_x.push_back(PauliOp::hermitian(x, BitVec(n)));
    BitVec z(n);
    z.set(0, true);
    code.logical_z.push_back(PauliOp::hermitian(BitVec(n), z));
  }
  code.build_logical_reps();
  if (n <= 21) {
    // Syndrome bit i is x_i XOR x_{i+1}; the two X-sets with a given
    // syndrome are complements, and the lighter one is the standard error.
    for (uint64_t s = 0; s < (uint64_t(1) << (n - 1)); ++s) {
      uint64_t xs = 0;
      bool cur = false;
      for (int i = 0; i < n; ++i) {
        if (cur) xs |= uint64_t(1) << i;
        if (i + 1 < n && ((s >> i) & 1)) cur = !cur;
      }
      int w = std::popcount(xs);
      if (2 * w > n) xs ^= (uint64_t(1) << n) - 1;
      code.syndrome_table[s] = {PauliOp::hermitian(BitVec::from_u64(n, xs), BitVec(n)), false};
    }
  }
  return code;
}

EpsDelta logical_eps_delta_closed(int n, double theta) {
  require_odd(n);
  double s2 = std::sin(theta / 2) * std::sin(theta / 2);
  double c2 = 1.0 - s2;
  KahanSum eps;
  for (int w = (n + 1) / 2; w <= n; ++w) {
    double term = (double)binomial(n, w);
    eps.add(2.0 * term * std::pow(s2, w) * std::pow(c2, n - w));
  }
  double sc = std::sin(theta / 2) * std::cos(theta / 2);
  double delta = 2.0 * (double)binomial(n - 1, (n - 1) / 2) * std::pow(sc, n);
  return {eps.value(), delta};
}

ChiMatrix logical_chi_enumerate(const std::vector<double>& angles, int workers) {
  int n = (int)angles.size();
  require_odd(n);
  if (n > 25) throw std::invalid_argument("logical_chi_enumerate: n > 25 rejected");
  std::vector<double> s(n), c(n);
  for (int i = 0; i < n; ++i) {
    s[i] = std::sin(angles[i] / 2);
    c[i] = std::cos(angles[i] / 2);
  }
  int t = (n - 1) / 2;

  struct Acc {
    KahanSum ii, xx;
    KahanCplx xi;
  };
  Acc total;
  parallel_chunks<Acc>(
      0, uint64_t(1) << n, workers,
      [&](uint64_t lo, uint64_t hi, Acc& a) {
        for (uint64_t S = lo; S < hi; ++S) {
          int w = std::popcount(S);
          if (w > t) continue;  // visit each syndrome class at its light member
          // amp(S) with X on S; amp of the complementary heavy member.
          cplx light(1.0, 0.0), heavy(1.0, 0.0);
          for (int i = 0; i < n; ++i) {
            if ((S >> i) & 1) {
              light *= cplx(0.0, -s[i]);
              heavy *= c[i];
            } else {
              light *= c[i];
              heavy *= cplx(0.0, -s[i]);
            }
          }
          a.ii.add(std::norm(light));
          a.xx.add(std::norm(heavy));
          a.xi.add(heavy * std::conj(light));
        }
      },
      [&](Acc& a) {
        total.ii.add(a.ii.value());
        total.xx.add(a.xx.value());
        total.xi.add(a.xi.value());
      });

  ChiMatrix chi = ChiMatrix::zero(1);
  chi.m(0, 0) = total.ii.value();
  chi.m(1, 1) = total.xx.value();
  chi.m(1, 0) = total.xi.value();
  chi.m(0, 1) = std::conj(total.xi.value());
  return chi;
}

EpsDelta eps_delta_from_chi(const ChiMatrix& chi) {
  EpsDelta r;
  r.eps = 2.0 * chi.m(1, 1).real();
  r.delta = -2.0 * chi.m(1, 0).imag();
  return r;
}

EpsDelta theorem1_asymptotics(int n, double theta) {
  double s2 = std::sin(theta / 2) * std::sin(theta / 2);
  if (!(s2 < 0.5)) throw std::domain_error("theorem1_asymptotics: requires sin^2(theta/2) < 1/2");
  double pref = std::sqrt(2.0 / (M_PI * n));
  double sn = std::pow(std::sin(theta), n);
  return {pref * sn * std::sin(theta) / std::cos(theta), pref * sn};
}

DecodingError decoding_error_probability(int n, double p) {
  require_odd(n);
  if (!(p > 0.0 && p < 0.5))
    throw std::domain_error("decoding_error_probability: requires 0 < p < 1/2");
  KahanSum exact;
  for (int w = (n + 1) / 2; w <= n; ++w)
    exact.add((double)binomial(n, w) * std::pow(p, w) * std::pow(1 - p, n - w));
  // p = sin^2(theta/2)  =>  sin(theta) = 2 sqrt(p(1-p)), cos(theta) = 1-2p
  double sin_t = 2.0 * std::sqrt(p * (1 - p));
  double approx = std::pow(sin_t, n + 1) / ((1 - 2 * p) * std::sqrt(2.0 * M_PI * n));
  return {exact.value(), approx};
}

double elementary_symmetric(const std::vector<double>& x, int m) {
  std::vector<double> e(m + 1, 0.0);
  e[0] = 1.0;
  for (size_t i = 0; i < x.size(); ++i)
    for (int k = std::min<int>(m, (int)i + 1); k >= 1; --k) e[k] += e[k - 1] * x[i];
  return e[m];
}

MinimizeWitness minimize_fm_witness(int n, int m, double c, long samples, uint64_t seed) {
  if (c <= 0) throw std::domain_error("minimize_fm_witness: c must be positive");
  MinimizeWitness w;
  double x0 = std::pow(c, 1.0 / n);
  w.symmetric_value = (double)binomial(n, m) * std::pow(x0, m);
  w.min_sampled = w.symmetric_value;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 0.7);
  std::vector<double> x(n);
  for (long it = 0; it < samples; ++it) {
    double mean = 0;
    for (int i = 0; i < n; ++i) {
      x[i] = g(rng);
      mean += x[i];
    }
    mean /= n;
    for (int i = 0; i < n; ++i) x[i] = x0 * std::exp(x[i] - mean);
    double f = elementary_symmetric(x, m);
    w.min_sampled = std::min(w.min_sampled, f);
    if (f < w.symmetric_value - 1e-12) ++w.violations;
  }
  // Constraint-preserving pairwise perturbation away from the symmetric point.
  std::vector<double> xp(n, x0);
  xp[0] *= 1.01;
  xp[1] /= 1.01;
  w.perturbed_increase = elementary_symmetric(xp, m) - w.symmetric_value;
  return w;
}

AlternatingIdentity binomial_alternating_identity(int n) {
  if (n < 1 || n % 2 == 0)
    throw std::invalid_argument("binomial_alternating_identity: n must be odd");
  AlternatingIdentity r;
  r.lhs = 0;
  for (int w = 0; w <= (n - 1) / 2; ++w) {
    Int term = binomial(n, w);
    r.lhs += (w % 2 == 0) ? term : -term;
  }
  r.rhs = binomial(n - 1, (n - 1) / 2);
  if (((n - 1) / 2) % 2 == 1) r.rhs = -r.rhs;
  r.holds = (r.lhs == r.rhs);
  return r;
}

}  // namespace qec::repcode
