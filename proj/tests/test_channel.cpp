// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qec/channel.hpp"
#include "qec/repcode.hpp"
#include "support/dense.hpp"

using namespace qec;

TEST_CASE("identity chi maps to identity ptm and back") {
  for (int n = 1; n <= 3; ++n) {
    ChiMatrix chi = ChiMatrix::identity(n);
    Ptm ptm = chi_to_ptm(chi);
    CHECK((ptm.m - Eigen::MatrixXd::Identity(ptm.m.rows(), ptm.m.cols())).cwiseAbs().maxCoeff() <
          1e-14);
    ChiMatrix back = ptm_to_chi(ptm);
    CHECK((back.m - chi.m).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("X-rotation chi produces the cos/sin rotation block") {
  double theta = 0.37;
  ChiMatrix chi = rotation_chi(theta, 'X');
  CHECK(std::abs(chi.m(0, 0).real() - (1 + std::cos(theta)) / 2) < 1e-15);
  CHECK(std::abs(chi.m(0, 1).imag() - std::sin(theta) / 2) < 1e-15);
  // Index packing: 0 = I, 1 = X, 2 = Z, 3 = Y.
  Ptm ptm = chi_to_ptm(chi);
  CHECK(std::abs(ptm.m(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(ptm.m(1, 1) - 1.0) < 1e-14);
  CHECK(std::abs(ptm.m(2, 2) - std::cos(theta)) < 1e-14);
  CHECK(std::abs(ptm.m(3, 3) - std::cos(theta)) < 1e-14);
  CHECK(std::abs(ptm.m(2, 3) - std::sin(theta)) < 1e-14);  // Z <- Y
  CHECK(std::abs(ptm.m(3, 2) + std::sin(theta)) < 1e-14);  // Y <- Z
  // The rotation/dephasing form reproduces the same channel.
  Ptm rd = rot_dephase_ptm(1 - std::cos(theta), std::sin(theta));
  CHECK((rd.m - ptm.m).cwiseAbs().maxCoeff() < 1e-14);
  // Same channel through the dense oracle.
  dense::Mat u(2, 2);
  u << std::cos(theta / 2), cplx(0, -std::sin(theta / 2)),
       cplx(0, -std::sin(theta / 2)), std::cos(theta / 2);
  Ptm oracle = dense::ptm_from_kraus(1, {u});
  CHECK((ptm.m - oracle.m).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("chi_to_ptm matches the dense superoperator oracle") {
  std::mt19937_64 rng(20260810);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      auto kraus = dense::random_kraus(n, trial % 2 ? 2 : 1 << n, rng);
      ChiMatrix chi = dense::chi_from_kraus(n, kraus);
      Ptm expect = dense::ptm_from_kraus(n, kraus);
      Ptm got = chi_to_ptm(chi);
      CHECK((expect.m - got.m).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("round trip chi <-> ptm on random CPTP channels") {
  std::mt19937_64 rng(31415);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      ChiMatrix chi = dense::chi_from_kraus(n, dense::random_kraus(n, 3, rng));
      ChiMatrix back = ptm_to_chi(chi_to_ptm(chi));
      CHECK((back.m - chi.m).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(chi.trace_preservation_residual() < 1e-12);
      CHECK(chi.min_eigenvalue() > -1e-10);
    }
  }
}

TEST_CASE("average infidelity closed forms") {
  CHECK(average_infidelity(Ptm::identity(2)) == 0.0);
  for (int n = 1; n <= 3; ++n) {
    double p = 0.83;
    int d = 1 << n;
    CHECK(std::abs(average_infidelity(depolarizing_ptm(n, p)) - (d - 1) * (1 - p) / d) < 1e-14);
  }
  double theta = 0.41;
  Ptm rot = chi_to_ptm(rotation_chi(theta, 'X'));
  CHECK(std::abs(average_infidelity(rot) - (1 - std::cos(theta)) / 3) < 1e-13);
}

TEST_CASE("unital block of a unitary channel is orthogonal") {
  std::mt19937_64 rng(808);
  for (int n = 1; n <= 2; ++n) {
    Ptm ptm = dense::ptm_from_kraus(n, {dense::random_unitary(1 << n, rng)});
    Eigen::MatrixXd nu = ptm.unital_block();
    Eigen::MatrixXd gram = nu.transpose() * nu;
    CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <
          1e-10);
    CHECK(ptm.nonunital_column().cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("unitarity values") {
  double theta = 0.3;
  CHECK(std::abs(unitarity(chi_to_ptm(rotation_chi(theta, 'X'))) - 1.0) < 1e-12);
  double p = 0.9;
  CHECK(std::abs(unitarity(depolarizing_ptm(1, p)) - p * p) < 1e-14);
  // Rotation/dephasing block: direct trace of the 2x2 block plus the fixed
  // X row gives (1 + 2(1-eps)^2 + 2 delta^2) / 3.
  double eps = 0.02, delta = 0.07;
  Ptm rd = rot_dephase_ptm(eps, delta);
  double direct = 0.0;
  for (int i = 1; i < 4; ++i)
    for (int j = 1; j < 4; ++j) direct += rd.m(i, j) * rd.m(i, j);
  direct /= 3.0;
  CHECK(std::abs(unitarity(rd) - direct) < 1e-15);
  CHECK(std::abs(direct - (1 + 2 * (1 - eps) * (1 - eps) + 2 * delta * delta) / 3) < 1e-15);
}

TEST_CASE("coherence angle") {
  CHECK(coherence_angle(0.9, 0.81) == 0.0);
  CHECK_THROWS_AS(coherence_angle(0.5, 0.0), std::domain_error);
  double theta = 0.1;
  Ptm rot = chi_to_ptm(rotation_chi(theta, 'X'));
  double big_theta = coherence_angle(benchmarking_p(rot), unitarity(rot));
  CHECK(std::abs(big_theta * big_theta - 2.0 / 3.0 * std::sin(theta) * std::sin(theta)) <
        0.01 * big_theta * big_theta);
  // eps = 0.01, delta = 0.1: exact arccos against the small-noise expansion.
  Ptm rd = rot_dephase_ptm(0.01, 0.1);
  double t2 = coherence_angle(benchmarking_p(rd), unitarity(rd));
  t2 *= t2;
  double expansion = 2.0 / 3.0 * 0.1 * 0.1;
  CHECK(std::abs(t2 - expansion) < 0.05 * expansion);
}

TEST_CASE("near-identity coherence angle matches the off-diagonal sum") {
  std::mt19937_64 rng(5);
  // Weak unital channel: mixture of small random rotations.
  auto kraus = dense::mixture_of_unitaries(2, 3, rng);
  // Pull each unitary toward the identity for the expansion regime.
  for (auto& k : kraus) {
    double w = k.squaredNorm() / k.rows();
    dense::Mat u = k / std::sqrt(w);
    dense::Mat blend = 0.985 * dense::Mat::Identity(u.rows(), u.cols()) + 0.015 * u;
    Eigen::HouseholderQR<dense::Mat> qr(blend);
    dense::Mat q = qr.householderQ();
    dense::Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < q.cols(); ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
    k = std::sqrt(w) * q;
  }
  Ptm ptm = dense::ptm_from_kraus(2, kraus);
  double p = benchmarking_p(ptm), u = unitarity(ptm);
  double lhs = coherence_angle(p, u);
  lhs *= lhs;
  double rhs = 0;
  auto nu = ptm.unital_block();
  for (int i = 0; i < nu.rows(); ++i)
    for (int j = 0; j < nu.cols(); ++j)
      if (i != j) rhs += nu(i, j) * nu(i, j);
  rhs /= (ptm.m.rows() - 1);
  CHECK(std::abs(lhs - rhs) < 0.05 * std::max(lhs, rhs) + 1e-12);
}

TEST_CASE("diamond bounds") {
  DiamondBounds id = diamond_bounds(Ptm::identity(1));
  CHECK(id.lower == 0.0);
  CHECK(id.upper == 0.0);
  double p = 0.92;
  DiamondBounds dep = diamond_bounds(depolarizing_ptm(1, p));
  CHECK(std::abs(dep.lower - std::sqrt(3.0) / 4.0 * (1 - p)) < 1e-14);
  CHECK(std::abs(dep.upper - 2.0 * std::sqrt(3.0) * (1 - p)) < 1e-14);
  CHECK(std::abs(dep.f2 - (1 - 2 * benchmarking_p(depolarizing_ptm(1, p)) +
                           unitarity(depolarizing_ptm(1, p)))) < 1e-14);
  // Random unital channel: lower <= upper and the f^2 identity is exact.
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    Ptm ptm = dense::ptm_from_kraus(2, dense::mixture_of_unitaries(2, 3, rng));
    DiamondBounds b = diamond_bounds(ptm);
    CHECK(b.lower <= b.upper);
    CHECK(std::abs(b.f2 - (1 - 2 * benchmarking_p(ptm) + unitarity(ptm))) < 1e-12);
  }
}

TEST_CASE("chi diamond bound") {
  CHECK(chi_diamond_bound(ChiMatrix::identity(2)) == 0.0);
  double p = 0.9;
  ChiMatrix dep_chi = ptm_to_chi(depolarizing_ptm(1, p));
  CHECK(chi_diamond_bound(dep_chi) >= diamond_bounds(depolarizing_ptm(1, p)).lower);
  // Logical channel of the 3-qubit repetition code at theta = 0.3.
  ChiMatrix chi = repcode::logical_chi_enumerate({0.3, 0.3, 0.3});
  Ptm ptm = chi_to_ptm(chi);
  CHECK(chi_diamond_bound(chi) >= diamond_bounds(ptm).lower);
}

TEST_CASE("composition") {
  double p = 0.9;
  Ptm dep2 = ptm_power(depolarizing_ptm(1, p), 2);
  CHECK((dep2.m - depolarizing_ptm(1, p * p).m).cwiseAbs().maxCoeff() < 1e-14);
  double theta = 0.21;
  Ptm rot = chi_to_ptm(rotation_chi(theta, 'X'));
  Ptm rot5 = ptm_power(rot, 5);
  Ptm expect = chi_to_ptm(rotation_chi(5 * theta, 'X'));
  CHECK((rot5.m - expect.m).cwiseAbs().maxCoeff() < 1e-12);
  std::vector<double> series = infidelity_series(rot, 20);
  for (int m = 1; m <= 20; ++m)
    CHECK(std::abs(series[m - 1] - (1 - std::cos(m * theta)) / 3) < 1e-12);
  // Rotation/dephasing closed form.
  double eps = 0.01, delta = 0.05;
  std::vector<double> rm = infidelity_series(rot_dephase_ptm(eps, delta), 10);
  for (int m = 1; m <= 10; ++m)
    CHECK(std::abs(rm[m - 1] - rm_closed_eps_delta(eps, delta, m)) < 1e-12);
  CHECK_THROWS_AS((void)ptm_power(rot, 2000000000L), std::invalid_argument);
  CHECK_THROWS_AS((void)ptm_power(rot, 0), std::invalid_argument);
}

TEST_CASE("off-diagonal identity") {
  double theta = 0.33;
  ChiMatrix chi = rotation_chi(theta, 'X');
  Ptm ptm = chi_to_ptm(chi);
  double lhs = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (a != b) lhs += ptm.m(a, b) * ptm.m(a, b);
  double s2 = 2 * std::sin(theta) * std::sin(theta);
  CHECK(std::abs(lhs - s2) < 1e-13);
  CHECK(offdiag_identity_residual(chi) < 1e-13);
  CHECK(offdiag_identity_residual(ChiMatrix::identity(3)) < 1e-14);
  std::mt19937_64 rng(271828);
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      ChiMatrix c = dense::chi_from_kraus(n, dense::random_kraus(n, 2, rng));
      CHECK(offdiag_identity_residual(c) < 1e-10);
    }
}

TEST_CASE("infidelity growth fit") {
  double theta = 0.01;
  Ptm rot = chi_to_ptm(rotation_chi(theta, 'X'));
  GrowthFit g = fit_infidelity_growth(rot, 10);
  double r = average_infidelity(rot);
  CHECK(std::abs(g.quadratic - r) < 0.05 * r);
  CHECK(std::abs(g.linear) < 2 * r);

  GrowthFit gd = fit_infidelity_growth(depolarizing_ptm(1, 0.999), 30);
  CHECK(gd.quadratic <= 1e-6 * gd.linear);

  double delta = 0.02, eps = delta * delta;
  GrowthFit ge = fit_infidelity_growth(rot_dephase_ptm(eps, delta), 10);
  CHECK(std::abs(ge.quadratic - delta * delta / 6) < 0.1 * delta * delta / 6);
}

TEST_CASE("composition growth respects the coherence-angle bound") {
  std::mt19937_64 rng(606);
  std::vector<Ptm> channels;
  channels.push_back(chi_to_ptm(rotation_chi(0.08, 'X')));
  channels.push_back(rot_dephase_ptm(0.003, 0.04));
  channels.push_back(depolarizing_ptm(1, 0.995));
  for (int trial = 0; trial < 3; ++trial) {
    auto kraus = dense::mixture_of_unitaries(1, 2, rng);
    for (auto& k : kraus) {
      double w = k.squaredNorm() / k.rows();
      dense::Mat u = k / std::sqrt(w);
      dense::Mat blend = 0.99 * dense::Mat::Identity(2, 2) + 0.01 * u;
      Eigen::HouseholderQR<dense::Mat> qr(blend);
      dense::Mat q = qr.householderQ();
      dense::Mat rr = qr.matrixQR().triangularView<Eigen::Upper>();
      for (int i = 0; i < 2; ++i) q.col(i) *= rr(i, i) / std::abs(rr(i, i));
      k = std::sqrt(w) * q;
    }
    channels.push_back(dense::ptm_from_kraus(1, kraus));
  }
  for (const Ptm& ch : channels) {
    double r = average_infidelity(ch);
    double u = unitarity(ch);
    double p = benchmarking_p(ch);
    double big = coherence_angle(p, u);
    int d = ch.dim();
    std::vector<double> rm = infidelity_series(ch, 100);
    for (int m = 1; m <= 100; ++m) {
      double bound = m * r + (d - 1.0) / (2.0 * d) * m * (m - 1.0) * big * big;
      CHECK(rm[m - 1] <= bound * 1.05 + 1e-12);
    }
  }
}

TEST_CASE("twirls") {
  std::mt19937_64 rng(404);
  ChiMatrix chi = dense::chi_from_kraus(1, dense::random_kraus(1, 2, rng));
  Ptm ptm = chi_to_ptm(chi);
  Ptm dep = clifford_twirl_1q(ptm);
  double p = benchmarking_p(ptm);
  for (int i = 1; i < 4; ++i) {
    CHECK(std::abs(dep.m(i, i) - p) < 1e-12);
    for (int j = 1; j < 4; ++j)
      if (i != j) CHECK(std::abs(dep.m(i, j)) < 1e-12);
  }
  // Pauli twirl: strictly diagonal, diagonal preserved.
  for (int n = 1; n <= 2; ++n) {
    ChiMatrix c = dense::chi_from_kraus(n, dense::random_kraus(n, 2, rng));
    Ptm full = chi_to_ptm(c);
    Ptm tw = pauli_twirl(full);
    for (int i = 0; i < tw.m.rows(); ++i)
      for (int j = 0; j < tw.m.cols(); ++j) {
        if (i == j)
          CHECK(std::abs(tw.m(i, i) - full.m(i, i)) < 1e-12);
        else
          CHECK(std::abs(tw.m(i, j)) < 1e-12);
      }
    CHECK(std::abs(benchmarking_p(tw) - benchmarking_p(full)) < 1e-12);
  }
}

TEST_CASE("metrics struct and json emitters are deterministic") {
  Ptm rd = rot_dephase_ptm(0.01, 0.1);
  ChannelMetrics mm = channel_metrics(rd);
  CHECK(mm.eps_delta.has_value());
  CHECK(std::abs(mm.eps_delta->first - 0.01) < 1e-14);
  CHECK(std::abs(mm.eps_delta->second - 0.1) < 1e-14);
  CHECK(to_json(rd) == to_json(rd));
  CHECK(to_json(rotation_chi(0.3, 'X')) == to_json(rotation_chi(0.3, 'X')));
  CHECK(csv_metrics_row(0.3, mm) == csv_metrics_row(0.3, mm));
}
