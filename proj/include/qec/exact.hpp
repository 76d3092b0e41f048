// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <vector>

namespace qec {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int factorial(long n) {
  if (n < 0) throw std::domain_error("factorial of negative integer");
  Int r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

// Binomial coefficient; zero outside 0 <= k <= n (n >= 0).
inline Int binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Int r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

// Falling factorial m(m-1)...(m-k+1) as an exact polynomial is provided by
// RatPoly::falling below; this is the integer evaluation.
inline Int falling(long m, long k) {
  Int r = 1;
  for (long i = 0; i < k; ++i) r *= (m - i);
  return r;
}

// Dense polynomial with rational coefficients, c[i] * m^i. Only the handful
// of operations the combinatorial censuses need.
struct RatPoly {
  std::vector<Rat> c;

  static RatPoly constant(const Rat& v) { return RatPoly{{v}}; }
  // m(m-1)...(m-k+1) in the indeterminate m.
  static RatPoly falling(long k) {
    RatPoly p{{1}};
    for (long i = 0; i < k; ++i) p = p * RatPoly{{Rat(-i), Rat(1)}};
    return p;
  }

  long degree() const { return (long)c.size() - 1; }
  Rat coeff(long i) const { return i >= 0 && i < (long)c.size() ? c[i] : Rat(0); }

  RatPoly operator*(const RatPoly& o) const {
    RatPoly r;
    r.c.assign(c.size() + o.c.size() - 1, Rat(0));
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    return r;
  }
  RatPoly& operator+=(const RatPoly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), Rat(0));
    for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
    return *this;
  }
  RatPoly scaled(const Rat& s) const {
    RatPoly r = *this;
    for (auto& v : r.c) v *= s;
    return r;
  }
};

// Gamma(x) for positive half-integer or integer x, represented exactly as
// rational * sqrt(pi)^{0 or 1}.
struct GammaHalf {
  Rat r;
  bool sqrt_pi = false;
};

inline GammaHalf gamma_exact_half(long twice_x) {
  if (twice_x <= 0) throw std::domain_error("gamma_exact_half: nonpositive argument");
  if (twice_x % 2 == 0) return {Rat(factorial(twice_x / 2 - 1)), false};
  // Gamma(n + 1/2) = (2n)! / (4^n n!) sqrt(pi)
  long n = (twice_x - 1) / 2;
  Rat v = Rat(factorial(2 * n)) / (Rat(Int(1) << (2 * n)) * Rat(factorial(n)));
  return {v, true};
}

}  // namespace qec
