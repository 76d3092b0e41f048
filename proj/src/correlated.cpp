// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "qec/correlated.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qec::correlated {

Int kappa(long p) {
  if (p < 0) throw std::domain_error("kappa: negative argument");
  return factorial(2 * p) / ((Int(1) << p) * factorial(p));
}

PhasedRat canonicalize(Rat value, int i_power) {
  if (value == 0) return {Rat(0), 0};
  if (value < 0) {
    value = -value;
    i_power += 2;
  }
  return {value, ((i_power % 4) + 4) % 4};
}

namespace {

void require_odd_n(long n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("n must be odd and >= 3");
}

}  // namespace

PhasedRat omega_term(long q, long k_R, long n) {
  require_odd_n(n);
  long m = (n - 1) / 2;
  long k_L = q - k_R;
  if (k_R < 0 || k_L < 0 || 2 * k_R > m || q > m)
    throw std::domain_error("omega_term: indices out of range");
  Int mag = binomial(n, 2 * k_L) * binomial(n - 2 * k_L, 2 * k_R) *
            binomial(n - 2 * k_L - 2 * k_R - 1, m - 2 * k_R) * kappa(k_L) * kappa(k_R);
  int ip = (int)((n - q) % 4);      // i^{n-q}
  ip += (int)(2 * (m % 2));         // (-1)^m
  ip += (int)(2 * (k_R % 2));       // (-1)^{k_R}
  return canonicalize(Rat(mag), ip);
}

PhasedRat delta_term(long q, long k_R, long n) {
  require_odd_n(n);
  long m = (n - 1) / 2;
  long k_L = q - k_R;
  if (k_R < 0 || k_L < 0 || q > m + 1)
    throw std::domain_error("delta_term: indices out of range");
  Int mag = binomial(n, m) * binomial(m + 1, 2 * k_L) * binomial(m + 1, 2 * k_R) *
            kappa(k_L) * kappa(k_R);
  int ip = (int)(((-q) % 4 + 4) % 4);  // (-i)^q = i^{-q}
  ip += (int)(2 * (k_R % 2));
  return canonicalize(Rat(mag), ip);
}

namespace {

PhasedRat phased_sum(long q, long n, PhasedRat (*term)(long, long, long), long k_R_cap) {
  // All terms share the same i-power up to the (-1)^{k_R} sign, so the sum
  // stays on one complex ray.
  Rat acc = 0;
  int base_ip = -1;
  for (long k_R = 0; k_R <= q; ++k_R) {
    if (2 * k_R > k_R_cap) break;
    PhasedRat t = term(q, k_R, n);
    if (t.magnitude == 0) continue;
    int ip = t.i_power;
    Rat v = t.magnitude;
    if (base_ip < 0) base_ip = ip % 2;  // remember the ray parity
    // Fold the i-power onto the base ray: terms differ only by factors of -1.
    int rel = ((ip - base_ip) % 4 + 4) % 4;
    if (rel == 0) acc += v;
    else if (rel == 2) acc -= v;
    else throw std::logic_error("phased_sum: terms not on a common ray");
  }
  if (base_ip < 0) base_ip = 0;
  return canonicalize(acc, base_ip);
}

}  // namespace

PhasedRat omega_sum(long q, long n) {
  long m = (n - 1) / 2;
  return phased_sum(q, n, &omega_term, m);
}

PhasedRat delta_sum(long q, long n) {
  long m = (n - 1) / 2;
  return phased_sum(q, n, &delta_term, m + 1);
}

Rat omega_closed(long q, long n) {
  require_odd_n(n);
  if (q % 2 != 0) return Rat(0);
  long m = (n - 1) / 2;
  if (q > m) throw std::domain_error("omega_closed: q out of range");
  return Rat(factorial(2 * m - q) * factorial(m + 1) * binomial(n, m)) /
         Rat(factorial(m - q / 2) * factorial(q / 2) * factorial(2 * m + 1 - 2 * q) *
             (Int(1) << q));
}

Rat delta_closed(long q, long n) {
  require_odd_n(n);
  if (q % 2 != 0) return Rat(0);
  long m = (n - 1) / 2;
  if (q > m + 1) throw std::domain_error("delta_closed: q out of range");
  return Rat(factorial(2 * m + 2 - q) * factorial(m + 1) * binomial(n, m)) /
         Rat(factorial(m - q / 2 + 1) * factorial(q / 2) * factorial(2 * m + 2 - 2 * q) *
             (Int(1) << q));
}

RatioCheck omega_delta_ratio(long q, long n) {
  require_odd_n(n);
  if (q == n) throw std::domain_error("omega_delta_ratio: q == n rejected");
  if (q % 2 != 0) throw std::domain_error("omega_delta_ratio: q must be even");
  RatioCheck r;
  Rat om = omega_sum(q, n).magnitude;
  Rat de = delta_sum(q, n).magnitude;
  if (de == 0) throw std::domain_error("omega_delta_ratio: vanishing denominator");
  r.ratio = om / de;
  r.expected = Rat(n + 1 - 2 * q) / Rat(2 * n - 2 * q);
  r.equal = (r.ratio == r.expected);
  r.bound_ok = (r.ratio <= Rat(n + 1) / Rat(2 * n));
  return r;
}

DixonCheck dixon_sum(long m, long q) {
  if (q % 2 != 0 || q < 0 || q > m) throw std::domain_error("dixon_sum: need even q <= m");
  DixonCheck c;
  c.lhs = 0;
  for (long k = 0; k <= q; ++k) {
    Int t = binomial(2 * m - 2 * q, m - 2 * k) * binomial(q, k);
    c.lhs += (k % 2 == 0) ? t : -t;
  }
  c.rhs = Rat(factorial(2 * m - q) * factorial(q)) /
          Rat(factorial(m - q / 2) * factorial(q / 2) * factorial(m));
  if ((q / 2) % 2 == 1) c.rhs = -c.rhs;
  c.holds = (Rat(c.lhs) == c.rhs);
  return c;
}

namespace {

bool nonpositive_integer(const Rat& v, long& out) {
  if (boost::multiprecision::denominator(v) != 1) return false;
  Int num = boost::multiprecision::numerator(v);
  if (num > 0) return false;
  out = (long)num;
  return true;
}

}  // namespace

Rat hypergeometric_3f2(const Rat& a, const Rat& b, const Rat& c,
                       const Rat& d, const Rat& e) {
  long ka = 0, kb = 0, kc = 0;
  long terms = -1;
  if (nonpositive_integer(a, ka)) terms = -ka;
  if (nonpositive_integer(b, kb)) terms = terms < 0 ? -kb : std::min(terms, -kb);
  if (nonpositive_integer(c, kc)) terms = terms < 0 ? -kc : std::min(terms, -kc);
  if (terms < 0)
    throw std::domain_error("hypergeometric_3f2: series does not terminate");
  Rat sum = 0, term = 1;
  for (long k = 0;; ++k) {
    sum += term;
    if (k == terms) break;
    Rat dd = (d + k) * (e + k) * (k + 1);
    if (dd == 0)
      throw std::domain_error("hypergeometric_3f2: denominator pole before termination");
    term *= (a + k) * (b + k) * (c + k) / dd;
  }
  return sum;
}

Rat dixon_gamma_product(const Rat& a, const Rat& b, const Rat& c) {
  // Gamma(1+a/2) Gamma(1+a/2-b-c) Gamma(1+a-b) Gamma(1+a-c)
  // / [Gamma(1+a) Gamma(1+a-b-c) Gamma(1+a/2-b) Gamma(1+a/2-c)]
  auto gh = [](const Rat& x) {
    Rat tx = 2 * x;
    if (boost::multiprecision::denominator(tx) != 1)
      throw std::domain_error("dixon_gamma_product: argument not half-integer");
    return gamma_exact_half((long)(Int)boost::multiprecision::numerator(tx));
  };
  GammaHalf num[4] = {gh(1 + a / 2), gh(1 + a / 2 - b - c), gh(1 + a - b), gh(1 + a - c)};
  GammaHalf den[4] = {gh(1 + a), gh(1 + a - b - c), gh(1 + a / 2 - b), gh(1 + a / 2 - c)};
  Rat v = 1;
  int sqrt_pi = 0;
  for (auto& g : num) {
    v *= g.r;
    sqrt_pi += g.sqrt_pi;
  }
  for (auto& g : den) {
    v /= g.r;
    sqrt_pi -= g.sqrt_pi;
  }
  if (sqrt_pi != 0)
    throw std::domain_error("dixon_gamma_product: sqrt(pi) factors do not cancel");
  return v;
}

CancellationCensus cancellation_census(long q) {
  if (q <= 0 || q % 2 != 0) throw std::domain_error("cancellation_census: q must be positive even");
  CancellationCensus out;
  out.q = q;
  RatPoly total;
  total.c.assign(2 * q + 1, Rat(0));
  for (long k_R = 0; k_R <= q; ++k_R) {
    RatPoly term = RatPoly::falling(2 * k_R) * RatPoly::falling(2 * q - 2 * k_R);
    Rat coeff = Rat(binomial(q, k_R));
    if (k_R % 2 == 1) coeff = -coeff;
    total += term.scaled(coeff);
  }
  out.coeffs.assign(2 * q + 1, Rat(0));
  for (long i = 0; i <= 2 * q; ++i) out.coeffs[i] = total.coeff(i);
  out.high_coeffs_vanish = true;
  for (long r = 0; 2 * r < q; ++r)
    if (total.coeff(2 * q - r) != 0) out.high_coeffs_vanish = false;
  Rat expect = Rat(factorial(q) * (Int(1) << q)) / Rat(factorial(q / 2));
  if ((q / 2) % 2 == 1) expect = -expect;
  out.leading_matches = (total.coeff(2 * q - q / 2) == expect);
  return out;
}

C10Check alternating_power_identity(long a) {
  C10Check c;
  c.lhs = 0;
  for (long b = 0; b <= a; ++b) {
    Int t = binomial(a, b);
    Int bp = 1;
    for (long i = 0; i < a; ++i) bp *= b;
    t *= bp;
    c.lhs += (b % 2 == 0) ? t : -t;
  }
  c.rhs = factorial(a);
  if (a % 2 == 1) c.rhs = -c.rhs;
  c.holds = (c.lhs == c.rhs);
  return c;
}

LogicalXPair repcode_logical_chi_dense(const CorrelatedModel& model) {
  int n = model.n;
  if (n < 3 || n % 2 == 0 || n > 9)
    throw std::invalid_argument("repcode_logical_chi_dense: odd n <= 9 required");
  if (model.h3 != 0.0 && n != 3)
    throw std::invalid_argument("repcode_logical_chi_dense: h3 only supported at n = 3");
  size_t dim = size_t(1) << n;
  // H is diagonal in the X eigenbasis; tau_i = (-1)^{x_i}.
  std::vector<cplx> psi(dim);
  for (size_t x = 0; x < dim; ++x) {
    int pop = std::popcount(x);
    double M = n - 2.0 * pop;
    double E = model.h1 * M + model.h2 * (M * M - n) / 2.0;
    if (n == 3) E += model.h3 * ((pop % 2) ? -1.0 : 1.0);
    psi[x] = std::exp(cplx(0.0, -E));
  }
  // Walsh-Hadamard transform: psi[S] = 2^-n sum_x (-1)^{|S & x|} e^{-iE(x)}.
  for (size_t len = 1; len < dim; len <<= 1) {
    for (size_t i = 0; i < dim; i += 2 * len) {
      for (size_t j = i; j < i + len; ++j) {
        cplx u = psi[j], v = psi[j + len];
        psi[j] = u + v;
        psi[j + len] = u - v;
      }
    }
  }
  double norm = 1.0 / (double)dim;
  int t = (n - 1) / 2;
  KahanCplx xx, xi;
  uint64_t full = (uint64_t(1) << n) - 1;
  for (size_t S = 0; S < dim; ++S) {
    if (std::popcount(S) <= t) continue;
    cplx heavy = psi[S] * norm;
    cplx light = psi[S ^ full] * norm;
    xx.add(heavy * std::conj(heavy));
    xi.add(heavy * std::conj(light));
  }
  return {xx.value(), xi.value()};
}

LogicalXPair collisionless_prediction(int n, double h1, double h2) {
  require_odd_n(n);
  long m = (n - 1) / 2;
  double t1 = std::tan(h1), t2 = std::tan(h2);
  double pref = std::pow(std::cos(h1), 2 * n) * std::pow(std::cos(h2), (double)n * (n - 1));
  KahanSum xi_mag, xx_mag;
  for (long q = 0; q <= m; q += 2)
    xi_mag.add((double)omega_closed(q, n) * std::pow(t2, (double)q) *
               std::pow(t1, (double)(n - 2 * q)));
  for (long q = 0; q <= m + 1; q += 2)
    xx_mag.add((double)delta_closed(q, n) * std::pow(t2, (double)q) *
               std::pow(t1, (double)(n + 1 - 2 * q)));
  // chi_XI lies on the -i ray for this sign convention; chi_XX is positive.
  return {cplx(pref * xx_mag.value(), 0.0), cplx(0.0, -pref * xi_mag.value())};
}

Theorem2Report theorem2_check(const CorrelatedModel& model) {
  Theorem2Report rep;
  rep.dense = repcode_logical_chi_dense(model);
  double xx = rep.dense.chi_xx.real();
  double xi = std::abs(rep.dense.chi_xi);
  rep.bound_rhs = (2.0 * model.n / (model.n + 1.0)) * std::tan(model.h1) * xi;
  rep.slack_factor = rep.bound_rhs > 0 ? xx / rep.bound_rhs : HUGE_VAL;
  rep.bound_ok = xx >= rep.bound_rhs * (1.0 - 3.0 * model.n * std::abs(model.h2));
  rep.collisionless_flagged = !model.collisionless_ok();
  return rep;
}

}  // namespace qec::correlated
