// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qec/repcode.hpp"
#include "qec/util.hpp"
#include "support/dense.hpp"

using namespace qec;
using repcode::EpsDelta;

namespace {

// Dense oracle: explicit 8x8 recovery for the 3-qubit code. Applies the
// product unitary, projects on each syndrome, applies the standard error,
// and reads off the logical Pauli transfer matrix.
Ptm dense_logical_ptm_3(const std::vector<double>& angles) {
  using dense::Mat;
  Mat u = Mat::Identity(1, 1);
  for (double th : angles) {
    Mat f(2, 2);
    f << std::cos(th / 2), cplx(0, -std::sin(th / 2)),
         cplx(0, -std::sin(th / 2)), std::cos(th / 2);
    u = dense::kron(u, f);
  }
  // Syndrome of basis state b: (b0 ^ b1, b1 ^ b2).
  auto syndrome_of = [](int b) {
    int b0 = (b >> 2) & 1, b1 = (b >> 1) & 1, b2 = b & 1;  // qubit 0 leftmost
    return ((b0 ^ b1) << 1) | (b1 ^ b2);
  };
  std::vector<Mat> proj(4, Mat::Zero(8, 8));
  for (int b = 0; b < 8; ++b) proj[syndrome_of(b)](b, b) = 1.0;
  auto op = [](const char* s) { return dense::pauli_op_dense(PauliOp::from_string(s)); };
  Mat E[4] = {op("III"), op("IIX"), op("XII"), op("IXI")};  // s = (s1 s2)

  auto recover = [&](const Mat& rho) {
    Mat out = Mat::Zero(8, 8);
    for (int s = 0; s < 4; ++s)
      out += E[s].adjoint() * proj[s] * rho * proj[s] * E[s];
    return out;
  };
  Mat xbar = op("XXX"), zbar = op("ZII");
  Mat pc = Mat::Zero(8, 8);
  pc(0, 0) = 1.0;
  pc(7, 7) = 1.0;
  // Library index packing: 0 = I, 1 = X, 2 = Z, 3 = Y.
  Mat logical[4] = {pc, xbar * pc, zbar * pc, cplx(0, 1) * xbar * zbar * pc};
  Ptm ptm;
  ptm.n = 1;
  ptm.m.resize(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Mat img = recover(u * logical[b] * u.adjoint());
      ptm.m(a, b) = (logical[a].adjoint() * img).trace().real();
    }
  ptm.m /= 2.0;
  return ptm;
}

}  // namespace

TEST_CASE("n=3 closed form reproduces the trigonometric identities") {
  for (double theta = 0.05; theta <= 0.5001; theta += 0.05) {
    double s = std::sin(theta / 2), c = std::cos(theta / 2);
    EpsDelta ed = repcode::logical_eps_delta_closed(3, theta);
    double eps_expect = 2 * std::pow(s, 6) + 6 * c * c * std::pow(s, 4);
    double delta_expect = 4 * std::pow(c, 3) * std::pow(s, 3);
    CHECK(near_rel(ed.eps, eps_expect, 1e-13));
    CHECK(near_rel(ed.delta, delta_expect, 1e-13));
  }
  EpsDelta at0 = repcode::logical_eps_delta_closed(5, 0.0);
  CHECK(at0.eps == 0.0);
  CHECK(at0.delta == 0.0);
  CHECK_THROWS_AS((void)repcode::logical_eps_delta_closed(4, 0.1), std::invalid_argument);
  CHECK_THROWS_AS((void)repcode::logical_chi_enumerate(std::vector<double>(27, 0.1)),
                  std::invalid_argument);
}

TEST_CASE("enumeration equals the dense recovery oracle at n=3") {
  std::vector<double> angles = {0.3, 0.3, 0.3};
  ChiMatrix chi = repcode::logical_chi_enumerate(angles);
  Ptm dense_ptm = dense_logical_ptm_3(angles);
  Ptm ptm = chi_to_ptm(chi);
  CHECK((ptm.m - dense_ptm.m).cwiseAbs().maxCoeff() < 1e-12);

  // Inhomogeneous angles through the same oracle.
  std::vector<double> mixed = {0.1, 0.2, 0.3};
  ChiMatrix chi2 = repcode::logical_chi_enumerate(mixed);
  Ptm dense2 = dense_logical_ptm_3(mixed);
  CHECK((chi_to_ptm(chi2).m - dense2.m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("closed form vs enumeration across n and theta") {
  for (int n = 3; n <= 15; n += 2) {
    for (double theta = 0.05; theta <= 0.5001; theta += 0.05) {
      EpsDelta closed = repcode::logical_eps_delta_closed(n, theta);
      std::vector<double> angles(n, theta);
      EpsDelta enumd = repcode::eps_delta_from_chi(repcode::logical_chi_enumerate(angles));
      CHECK(near_rel(closed.eps, enumd.eps, 1e-12));
      CHECK(near_rel(closed.delta, enumd.delta, 1e-12));
    }
  }
}

TEST_CASE("enumerated logical channel is CPTP") {
  for (double theta : {0.1, 0.3, 0.5}) {
    ChiMatrix chi = repcode::logical_chi_enumerate({theta, theta, theta, theta, theta});
    CHECK(chi.hermiticity_residual() < 1e-14);
    CHECK(chi.trace_preservation_residual() < 1e-12);
    CHECK(chi.min_eigenvalue() > -1e-10);
  }
}

TEST_CASE("inhomogeneous rotations") {
  std::vector<double> angles = {0.1, 0.2, 0.3};
  int n = 3, t = 1;
  EpsDelta ed = repcode::eps_delta_from_chi(repcode::logical_chi_enumerate(angles));
  double prod_sc = 1.0;
  for (double a : angles) prod_sc *= std::sin(a / 2) * std::cos(a / 2);
  double delta_expect = 2 * (double)binomial(n - 1, t) * prod_sc;
  CHECK(near_rel(ed.delta, delta_expect, 1e-12));

  // Coherence bound from the symmetric-point minimization, small angles.
  for (auto angles5 : std::vector<std::vector<double>>{
           {0.05, 0.08, 0.1, 0.12, 0.15}, {0.02, 0.2, 0.1, 0.07, 0.12}}) {
    EpsDelta e5 = repcode::eps_delta_from_chi(repcode::logical_chi_enumerate(angles5));
    double sbar = 1.0;
    for (double a : angles5) sbar *= std::sin(a / 2);
    sbar = std::pow(sbar, 1.0 / angles5.size());
    double bound = (angles5.size() + 1.0) / (2.0 * angles5.size()) * e5.eps / sbar;
    CHECK(e5.delta <= bound * 1.05);
  }
}

TEST_CASE("large-n asymptotics") {
  int n = 21;
  double theta = 0.5;
  EpsDelta hat = repcode::theorem1_asymptotics(n, theta);
  EpsDelta exact = repcode::logical_eps_delta_closed(n, theta);
  CHECK(std::abs(exact.eps / hat.eps - 1.0) < 0.10);
  CHECK(std::abs(exact.delta / hat.delta - 1.0) < 0.10);
  // delta_hat / eps_hat = cos/sin exactly.
  CHECK(near_rel(hat.delta / hat.eps, std::cos(theta) / std::sin(theta), 1e-12));
  // At n=3 the asymptotic regime is far away; report, do not assert.
  EpsDelta hat3 = repcode::theorem1_asymptotics(3, theta);
  EpsDelta exact3 = repcode::logical_eps_delta_closed(3, theta);
  MESSAGE("n=3 asymptotic deviation eps: ", exact3.eps / hat3.eps,
          " delta: ", exact3.delta / hat3.delta);
  CHECK_THROWS_AS((void)repcode::theorem1_asymptotics(5, 2.0), std::domain_error);
}

TEST_CASE("decoding error probability") {
  auto de = repcode::decoding_error_probability(3, 0.1);
  CHECK(near_rel(de.exact, 3 * 0.01 * 0.9 + 0.001, 1e-14));
  auto tiny = repcode::decoding_error_probability(5, 1e-4);
  CHECK(tiny.exact < 1e-6);
  auto big = repcode::decoding_error_probability(51, 0.1);
  CHECK(big.approx / big.exact > 0.9);
  CHECK(big.approx / big.exact < 1.1);
  CHECK_THROWS_AS((void)repcode::decoding_error_probability(5, 0.6), std::domain_error);
}

TEST_CASE("symmetric point minimizes the constrained symmetric sum") {
  auto w = repcode::minimize_fm_witness(3, 2, 1.0, 10000, 42);
  CHECK(w.symmetric_value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(w.violations == 0);
  CHECK(w.min_sampled >= w.symmetric_value - 1e-12);
  auto w2 = repcode::minimize_fm_witness(5, 3, 0.37, 10000, 7);
  CHECK(w2.violations == 0);
  CHECK(w2.perturbed_increase > 0.0);
}

TEST_CASE("alternating binomial identity") {
  auto r3 = repcode::binomial_alternating_identity(3);
  CHECK(r3.holds);
  CHECK(r3.lhs == -2);
  auto r1 = repcode::binomial_alternating_identity(1);
  CHECK(r1.holds);
  CHECK(r1.lhs == 1);
  for (int n = 1; n <= 101; n += 2) CHECK(repcode::binomial_alternating_identity(n).holds);
}

TEST_CASE("enumeration is worker-count invariant") {
  std::vector<double> angles(9, 0.17);
  ChiMatrix a = repcode::logical_chi_enumerate(angles, 1);
  ChiMatrix b = repcode::logical_chi_enumerate(angles, 4);
  CHECK((a.m - b.m).cwiseAbs().maxCoeff() == 0.0);
}
