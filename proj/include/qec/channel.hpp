// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "qec/util.hpp"

namespace qec {

// Multiplication table for the 4^n Hermitian-canonical Pauli operators on a
// dense index i = x | (z << n). P_i P_j = i^phase * P_k with P_k canonical.
struct PauliProductTable {
  int n = 0;
  int d2 = 0;
  std::vector<int> idx;      // [i * d2 + j] -> k
  std::vector<int8_t> ph;    // [i * d2 + j] -> phase exponent mod 4
  static const PauliProductTable& get(int n);  // cached, n <= 6
};

// Channel in the chi representation: N(rho) = sum_ij chi[i][j] P_i rho P_j
// over Hermitian-canonical Paulis, index packing i = x | (z << n).
struct ChiMatrix {
  int n = 0;
  Eigen::MatrixXcd m;

  static ChiMatrix zero(int n) {
    ChiMatrix c;
    c.n = n;
    c.m = Eigen::MatrixXcd::Zero(1 << (2 * n), 1 << (2 * n));
    return c;
  }
  static ChiMatrix identity(int n) {
    ChiMatrix c = zero(n);
    c.m(0, 0) = 1.0;
    return c;
  }
  int dim() const { return 1 << n; }

  double hermiticity_residual() const;
  double trace_preservation_residual() const;
  double min_eigenvalue() const;
};

// Pauli transfer matrix N_ab = (1/d) Tr(P_a N(P_b)); first row (1,0,...,0)
// for trace-preserving maps. The unital block excludes row/column 0.
struct Ptm {
  int n = 0;
  Eigen::MatrixXd m;

  static Ptm identity(int n) {
    Ptm p;
    p.n = n;
    p.m = Eigen::MatrixXd::Identity(1 << (2 * n), 1 << (2 * n));
    return p;
  }
  int dim() const { return 1 << n; }
  Eigen::MatrixXd unital_block() const { return m.bottomRightCorner(m.rows() - 1, m.cols() - 1); }
  Eigen::VectorXd nonunital_column() const { return m.block(1, 0, m.rows() - 1, 1); }
  double trace_preservation_residual() const;
};

Ptm chi_to_ptm(const ChiMatrix& chi);
ChiMatrix ptm_to_chi(const Ptm& ptm);

double average_infidelity(const Ptm& ptm);
double benchmarking_p(const Ptm& ptm);
double unitarity(const Ptm& ptm);
// Theta = arccos(p / sqrt(u)), with the argument clamped to [-1, 1].
// Throws std::domain_error when u <= 0.
double coherence_angle(double p, double u);

struct DiamondBounds {
  double lower = 0;
  double upper = 0;
  double f2 = 0;  // 1 - 2p + u route, for the identity cross-check
};
DiamondBounds diamond_bounds(const Ptm& ptm);

// Upper bound on the diamond distance from identity computed from the chi
// matrix of a unital channel: sqrt(d^2/4 * sum_{i!=j} |chi_ij|^2
//                                 + d^2/2 * (sum_{l!=0} chi_ll)^2).
double chi_diamond_bound(const ChiMatrix& chi);

// Exact matrix power. Rejects m < 1 and m > 1e9.
Ptm ptm_power(const Ptm& ptm, long m);
// r_m for m = 1..m_max by iterated composition.
std::vector<double> infidelity_series(const Ptm& ptm, int m_max);

// | sum_{a!=b} N_ab^2 - d^2 sum_{i!=j} |chi_ij|^2 |
double offdiag_identity_residual(const ChiMatrix& chi);

struct GrowthFit {
  double linear = 0;     // coefficient of m
  double quadratic = 0;  // coefficient of m(m-1)
};
GrowthFit fit_infidelity_growth(const Ptm& ptm, int m_max);

// Detects the block form diag(1, 1, M) with M = [[1-eps, -delta], [delta,
// 1-eps]] on the (Y, Z) block of a single-qubit PTM.
std::optional<std::pair<double, double>> eps_delta_form(const Ptm& ptm, double tol = 1e-9);

struct ChannelMetrics {
  double r = 0, p = 0, u = 0, theta = 0;
  double d_lower = 0, d_upper = 0;
  std::optional<std::pair<double, double>> eps_delta;
};
ChannelMetrics channel_metrics(const Ptm& ptm);

// Closed form for r_m of the rotation/dephasing channel.
double rm_closed_eps_delta(double eps, double delta, long m);

// Pauli twirl: conjugation average over the Pauli group, computed from the
// commutation signs. Diagonalizes the PTM.
Ptm pauli_twirl(const Ptm& ptm);
// Full single-qubit Clifford twirl (24 rotation PTMs); depolarizing output.
Ptm clifford_twirl_1q(const Ptm& ptm);

// Named channels.
ChiMatrix rotation_chi(double theta, char axis = 'X');
Ptm depolarizing_ptm(int n, double p);
Ptm rot_dephase_ptm(double eps, double delta);

// JSON emitters (row-major entries, explicit n; complex as {re, im}).
std::string to_json(const ChiMatrix& chi);
std::string to_json(const Ptm& ptm);
std::string csv_metrics_header();
std::string csv_metrics_row(double theta, const ChannelMetrics& mm);

}  // namespace qec
