// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Dense-matrix oracles used by the test suites. Everything here is an
// independent computation path: explicit 2^n x 2^n matrices, no bitmask
// shortcuts, so it can referee the fast implementations.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "qec/channel.hpp"
#include "qec/pauli.hpp"

namespace dense {

using Mat = Eigen::MatrixXcd;
using qec::cplx;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Mat pauli1(int code) {
  Mat m(2, 2);
  switch (code) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;                    // X
    case 2: m << 0, cplx(0, -1), cplx(0, 1), 0; break; // Y
    default: m << 1, 0, 0, -1; break;                  // Z
  }
  return m;
}

// Hermitian-canonical Pauli for packed index i = x | (z << n), qubit 0 as the
// leftmost tensor factor.
inline Mat pauli_dense(int n, int idx) {
  Mat out = Mat::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    int bx = (idx >> q) & 1;
    int bz = (idx >> (n + q)) & 1;
    out = kron(out, pauli1(bx ? (bz ? 2 : 1) : (bz ? 3 : 0)));
  }
  return out;
}

inline Mat pauli_op_dense(const qec::PauliOp& p) {
  Mat out = Mat::Identity(1, 1);
  for (int q = 0; q < p.n; ++q) {
    Mat f = Mat::Identity(2, 2);
    if (p.x.get(q)) f = f * pauli1(1);
    if (p.z.get(q)) f = f * pauli1(3);
    out = kron(out, f);
  }
  return qec::ipow(p.phase_exp) * out;
}

inline Mat random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

// Random CPTP channel as Kraus operators from a Stinespring isometry.
inline std::vector<Mat> random_kraus(int n, int n_kraus, std::mt19937_64& rng) {
  int d = 1 << n;
  Mat u = random_unitary(d * n_kraus, rng);
  std::vector<Mat> ks;
  for (int k = 0; k < n_kraus; ++k) ks.push_back(u.block(k * d, 0, d, d));
  return ks;
}

inline qec::ChiMatrix chi_from_kraus(int n, const std::vector<Mat>& kraus) {
  int d = 1 << n;
  int d2 = d * d;
  qec::ChiMatrix chi = qec::ChiMatrix::zero(n);
  for (const Mat& k : kraus) {
    Eigen::VectorXcd c(d2);
    for (int i = 0; i < d2; ++i) c(i) = (pauli_dense(n, i) * k).trace() / (double)d;
    chi.m += c * c.adjoint();
  }
  return chi;
}

// PTM entries straight from the channel action on dense Pauli operators.
inline qec::Ptm ptm_from_kraus(int n, const std::vector<Mat>& kraus) {
  int d = 1 << n;
  int d2 = d * d;
  qec::Ptm ptm;
  ptm.n = n;
  ptm.m.resize(d2, d2);
  std::vector<Mat> paulis(d2);
  for (int i = 0; i < d2; ++i) paulis[i] = pauli_dense(n, i);
  for (int b = 0; b < d2; ++b) {
    Mat acted = Mat::Zero(d, d);
    for (const Mat& k : kraus) acted += k * paulis[b] * k.adjoint();
    for (int a = 0; a < d2; ++a)
      ptm.m(a, b) = (paulis[a] * acted).trace().real() / (double)d;
  }
  return ptm;
}

inline std::vector<Mat> mixture_of_unitaries(int n, int count, std::mt19937_64& rng) {
  int d = 1 << n;
  std::vector<double> w(count);
  double tot = 0;
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (auto& x : w) {
    x = u(rng);
    tot += x;
  }
  std::vector<Mat> ks;
  for (int k = 0; k < count; ++k) ks.push_back(std::sqrt(w[k] / tot) * random_unitary(d, rng));
  return ks;
}

}  // namespace dense
