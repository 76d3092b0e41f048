// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "qec/channel.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qec {

namespace {

// Phase bookkeeping for canonical Hermitian Paulis on packed small indices.
inline int canon_phase(uint32_t x, uint32_t z) { return std::popcount(x & z) & 3; }

}  // namespace

const PauliProductTable& PauliProductTable::get(int n) {
  static std::map<int, PauliProductTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1 || n > 6) throw std::invalid_argument("PauliProductTable: n out of range");
  PauliProductTable t;
  t.n = n;
  t.d2 = 1 << (2 * n);
  t.idx.resize((size_t)t.d2 * t.d2);
  t.ph.resize((size_t)t.d2 * t.d2);
  uint32_t xm = (1u << n) - 1;
  for (int i = 0; i < t.d2; ++i) {
    uint32_t xi = i & xm, zi = (uint32_t)i >> n;
    for (int j = 0; j < t.d2; ++j) {
      uint32_t xj = j & xm, zj = (uint32_t)j >> n;
      uint32_t xk = xi ^ xj, zk = zi ^ zj;
      int e = canon_phase(xi, zi) + canon_phase(xj, zj) +
              2 * (std::popcount(zi & xj) & 1) - canon_phase(xk, zk);
      t.idx[(size_t)i * t.d2 + j] = (int)(xk | (zk << n));
      t.ph[(size_t)i * t.d2 + j] = (int8_t)(((e % 4) + 4) % 4);
    }
  }
  return cache.emplace(n, std::move(t)).first->second;
}

double ChiMatrix::hermiticity_residual() const {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double ChiMatrix::trace_preservation_residual() const {
  const auto& t = PauliProductTable::get(n);
  std::vector<KahanCplx> acc(t.d2);
  for (int i = 0; i < t.d2; ++i)
    for (int j = 0; j < t.d2; ++j) {
      size_t e = (size_t)j * t.d2 + i;  // P_j P_i
      acc[t.idx[e]].add(ipow(t.ph[e]) * m(i, j));
    }
  double r = std::abs(acc[0].value() - 1.0);
  for (int k = 1; k < t.d2; ++k) r = std::max(r, std::abs(acc[k].value()));
  return r;
}

double ChiMatrix::min_eigenvalue() const {
  Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double Ptm::trace_preservation_residual() const {
  double r = std::abs(m(0, 0) - 1.0);
  for (int j = 1; j < m.cols(); ++j) r = std::max(r, std::abs(m(0, j)));
  return r;
}

Ptm chi_to_ptm(const ChiMatrix& chi) {
  if (chi.hermiticity_residual() > 1e-9)
    throw std::invalid_argument("chi_to_ptm: chi matrix is not Hermitian");
  const auto& t = PauliProductTable::get(chi.n);
  int d2 = t.d2;
  std::vector<KahanCplx> acc((size_t)d2 * d2);
  for (int a = 0; a < d2; ++a) {
    for (int i = 0; i < d2; ++i) {
      size_t e1 = (size_t)i * d2 + a;
      int k1 = t.idx[e1];
      int p1 = t.ph[e1];
      for (int j = 0; j < d2; ++j) {
        size_t e2 = (size_t)k1 * d2 + j;
        int b = t.idx[e2];
        acc[(size_t)b * d2 + a].add(ipow(p1 + t.ph[e2]) * chi.m(i, j));
      }
    }
  }
  Ptm out;
  out.n = chi.n;
  out.m.resize(d2, d2);
  for (int b = 0; b < d2; ++b)
    for (int a = 0; a < d2; ++a) out.m(b, a) = acc[(size_t)b * d2 + a].value().real();
  return out;
}

ChiMatrix ptm_to_chi(const Ptm& ptm) {
  const auto& t = PauliProductTable::get(ptm.n);
  int d2 = t.d2;
  ChiMatrix out = ChiMatrix::zero(ptm.n);
  for (int i = 0; i < d2; ++i) {
    for (int j = 0; j < d2; ++j) {
      KahanCplx acc;
      for (int a = 0; a < d2; ++a) {
        size_t e1 = (size_t)i * d2 + a;
        int k1 = t.idx[e1];
        size_t e2 = (size_t)k1 * d2 + j;
        int b = t.idx[e2];
        // chi_ij = (1/d^2) sum_a eta* N_ba with P_i P_a P_j = eta P_b
        acc.add(ipow(-(t.ph[e1] + t.ph[e2])) * ptm.m(b, a));
      }
      out.m(i, j) = acc.value() / (double)d2;
    }
  }
  return out;
}

double average_infidelity(const Ptm& ptm) {
  int d = ptm.dim();
  double tr = ptm.m.trace();
  return ((double)ptm.m.rows() - tr) / ((double)d * (d + 1));
}

double benchmarking_p(const Ptm& ptm) {
  int d2 = (int)ptm.m.rows();
  KahanSum s;
  for (int i = 1; i < d2; ++i) s.add(ptm.m(i, i));
  return s.value() / (d2 - 1);
}

double unitarity(const Ptm& ptm) {
  int d2 = (int)ptm.m.rows();
  KahanSum s;
  for (int i = 1; i < d2; ++i)
    for (int j = 1; j < d2; ++j) s.add(ptm.m(i, j) * ptm.m(i, j));
  return s.value() / (d2 - 1);
}

double coherence_angle(double p, double u) {
  if (u <= 0) throw std::domain_error("coherence_angle: unitarity must be positive");
  double a = p / std::sqrt(u);
  a = std::min(1.0, std::max(-1.0, a));
  return std::acos(a);
}

DiamondBounds diamond_bounds(const Ptm& ptm) {
  int d2 = (int)ptm.m.rows();
  int d = ptm.dim();
  KahanSum s;
  for (int i = 1; i < d2; ++i) {
    for (int j = 1; j < d2; ++j)
      if (i != j) s.add(ptm.m(i, j) * ptm.m(i, j));
    double di = 1.0 - ptm.m(i, i);
    s.add(di * di);
  }
  DiamondBounds b;
  b.f2 = s.value() / (d2 - 1);
  b.lower = std::sqrt(s.value()) / (2.0 * d);
  b.upper = d * std::sqrt(s.value());
  return b;
}

double chi_diamond_bound(const ChiMatrix& chi) {
  int d2 = (int)chi.m.rows();
  int d = chi.dim();
  KahanSum off, diag;
  for (int i = 0; i < d2; ++i) {
    for (int j = 0; j < d2; ++j)
      if (i != j) off.add(std::norm(chi.m(i, j)));
    if (i != 0) diag.add(chi.m(i, i).real());
  }
  double dd = diag.value();
  return std::sqrt((double)d * d / 4.0 * off.value() + (double)d * d / 2.0 * dd * dd);
}

Ptm ptm_power(const Ptm& ptm, long m) {
  if (m < 1) throw std::invalid_argument("ptm_power: m must be >= 1");
  if (m > 1000000000L) throw std::invalid_argument("ptm_power: m too large");
  Ptm out = Ptm::identity(ptm.n);
  Eigen::MatrixXd base = ptm.m;
  long e = m;
  while (e > 0) {
    if (e & 1) out.m = out.m * base;
    if (e >>= 1) base = base * base;
  }
  return out;
}

std::vector<double> infidelity_series(const Ptm& ptm, int m_max) {
  std::vector<double> r;
  r.reserve(m_max);
  Eigen::MatrixXd acc = ptm.m;
  for (int m = 1; m <= m_max; ++m) {
    Ptm cur;
    cur.n = ptm.n;
    cur.m = acc;
    r.push_back(average_infidelity(cur));
    if (m < m_max) acc = acc * ptm.m;
  }
  return r;
}

double offdiag_identity_residual(const ChiMatrix& chi) {
  Ptm ptm = chi_to_ptm(chi);
  int d2 = (int)ptm.m.rows();
  int d = chi.dim();
  KahanSum lhs, rhs;
  for (int a = 0; a < d2; ++a)
    for (int b = 0; b < d2; ++b)
      if (a != b) lhs.add(ptm.m(a, b) * ptm.m(a, b));
  for (int i = 0; i < d2; ++i)
    for (int j = 0; j < d2; ++j)
      if (i != j) rhs.add(std::norm(chi.m(i, j)));
  return std::abs(lhs.value() - (double)d * d * rhs.value());
}

GrowthFit fit_infidelity_growth(const Ptm& ptm, int m_max) {
  std::vector<double> r = infidelity_series(ptm, m_max);
  // Least squares on r_m = a m + b m(m-1).
  double s11 = 0, s12 = 0, s22 = 0, t1 = 0, t2 = 0;
  for (int m = 1; m <= m_max; ++m) {
    double f1 = m, f2 = (double)m * (m - 1);
    s11 += f1 * f1;
    s12 += f1 * f2;
    s22 += f2 * f2;
    t1 += f1 * r[m - 1];
    t2 += f2 * r[m - 1];
  }
  double det = s11 * s22 - s12 * s12;
  GrowthFit g;
  if (det != 0) {
    g.linear = (t1 * s22 - t2 * s12) / det;
    g.quadratic = (s11 * t2 - s12 * t1) / det;
  } else {
    g.linear = t1 / s11;
  }
  return g;
}

std::optional<std::pair<double, double>> eps_delta_form(const Ptm& ptm, double tol) {
  if (ptm.m.rows() != 4) return std::nullopt;
  // Index packing 0 = I, 1 = X, 2 = Z, 3 = Y; delta is the Z <- Y entry,
  // which is + sin(theta) for the X rotation exp(-i theta X / 2).
  const auto& N = ptm.m;
  double eps = 1.0 - N(2, 2);
  double delta = N(2, 3);
  Eigen::Matrix4d ref;
  ref << 1, 0, 0, 0,
         0, 1, 0, 0,
         0, 0, 1 - eps, delta,
         0, 0, -delta, 1 - eps;
  if ((N - ref).cwiseAbs().maxCoeff() > tol) return std::nullopt;
  return std::make_pair(eps, delta);
}

ChannelMetrics channel_metrics(const Ptm& ptm) {
  ChannelMetrics mm;
  mm.r = average_infidelity(ptm);
  mm.p = benchmarking_p(ptm);
  mm.u = unitarity(ptm);
  mm.theta = mm.u > 0 ? coherence_angle(mm.p, mm.u) : 0.0;
  DiamondBounds b = diamond_bounds(ptm);
  mm.d_lower = b.lower;
  mm.d_upper = b.upper;
  mm.eps_delta = eps_delta_form(ptm);
  return mm;
}

double rm_closed_eps_delta(double eps, double delta, long m) {
  std::complex<double> lp = std::pow(std::complex<double>(1.0 - eps, delta), (double)m);
  std::complex<double> lm = std::pow(std::complex<double>(1.0 - eps, -delta), (double)m);
  return (2.0 - lp.real() - lm.real()) / 6.0;
}

Ptm pauli_twirl(const Ptm& ptm) {
  const auto& t = PauliProductTable::get(ptm.n);
  int d2 = t.d2;
  int n = ptm.n;
  uint32_t xm = (1u << n) - 1;
  auto anticommutes = [&](int a, int b) {
    uint32_t xa = a & xm, za = (uint32_t)a >> n;
    uint32_t xb = b & xm, zb = (uint32_t)b >> n;
    return ((std::popcount(xa & zb) + std::popcount(za & xb)) & 1) != 0;
  };
  Ptm out;
  out.n = ptm.n;
  out.m = Eigen::MatrixXd::Zero(d2, d2);
  for (int i = 0; i < d2; ++i) {
    for (int j = 0; j < d2; ++j) {
      KahanSum s;
      for (int c = 0; c < d2; ++c) {
        double sign = (anticommutes(c, i) == anticommutes(c, j)) ? 1.0 : -1.0;
        s.add(sign * ptm.m(i, j));
      }
      out.m(i, j) = s.value() / d2;
    }
  }
  return out;
}

Ptm clifford_twirl_1q(const Ptm& ptm) {
  if (ptm.m.rows() != 4) throw std::invalid_argument("clifford_twirl_1q: single-qubit only");
  // The 24 proper rotations of the octahedron: signed 3x3 permutation
  // matrices with determinant +1.
  std::vector<Eigen::Matrix3d> rots;
  int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (auto& pm : perms) {
    for (int signs = 0; signs < 8; ++signs) {
      Eigen::Matrix3d r = Eigen::Matrix3d::Zero();
      for (int row = 0; row < 3; ++row)
        r(row, pm[row]) = (signs >> row) & 1 ? -1.0 : 1.0;
      if (std::abs(r.determinant() - 1.0) < 1e-12) rots.push_back(r);
    }
  }
  Eigen::Matrix3d nu = ptm.m.bottomRightCorner(3, 3);
  Eigen::Vector3d nn = ptm.m.block(1, 0, 3, 1);
  Eigen::Matrix3d acc_u = Eigen::Matrix3d::Zero();
  Eigen::Vector3d acc_n = Eigen::Vector3d::Zero();
  for (const auto& r : rots) {
    acc_u += r.transpose() * nu * r;
    acc_n += r.transpose() * nn;
  }
  Ptm out;
  out.n = 1;
  out.m = Eigen::Matrix4d::Zero();
  out.m(0, 0) = ptm.m(0, 0);
  out.m.block(1, 1, 3, 3) = acc_u / (double)rots.size();
  out.m.block(1, 0, 3, 1) = acc_n / (double)rots.size();
  out.m.block(0, 1, 1, 3) = ptm.m.block(0, 1, 1, 3);
  return out;
}

ChiMatrix rotation_chi(double theta, char axis) {
  ChiMatrix chi = ChiMatrix::zero(1);
  int idx;
  switch (axis) {
    case 'X': idx = 1; break;  // x-bit
    case 'Z': idx = 2; break;  // z-bit
    case 'Y': idx = 3; break;
    default: throw std::invalid_argument("rotation_chi: axis must be X, Y or Z");
  }
  cplx c0 = std::cos(theta / 2.0);
  cplx c1(0.0, -std::sin(theta / 2.0));
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  v(0) = c0;
  v(idx) = c1;
  chi.m = v * v.adjoint();
  return chi;
}

Ptm depolarizing_ptm(int n, double p) {
  Ptm out = Ptm::identity(n);
  for (int i = 1; i < out.m.rows(); ++i) out.m(i, i) = p;
  return out;
}

Ptm rot_dephase_ptm(double eps, double delta) {
  Ptm out = Ptm::identity(1);
  out.m(2, 2) = 1 - eps;
  out.m(3, 3) = 1 - eps;
  out.m(2, 3) = delta;
  out.m(3, 2) = -delta;
  return out;
}

std::string to_json(const ChiMatrix& chi) {
  nlohmann::ordered_json j;
  j["type"] = "chi";
  j["n"] = chi.n;
  std::vector<double> re, im;
  for (int i = 0; i < chi.m.rows(); ++i)
    for (int jj = 0; jj < chi.m.cols(); ++jj) {
      re.push_back(chi.m(i, jj).real());
      im.push_back(chi.m(i, jj).imag());
    }
  j["re"] = re;
  j["im"] = im;
  return j.dump();
}

std::string to_json(const Ptm& ptm) {
  nlohmann::ordered_json j;
  j["type"] = "ptm";
  j["n"] = ptm.n;
  std::vector<double> entries;
  for (int i = 0; i < ptm.m.rows(); ++i)
    for (int jj = 0; jj < ptm.m.cols(); ++jj) entries.push_back(ptm.m(i, jj));
  j["entries"] = entries;
  return j.dump();
}

std::string csv_metrics_header() { return "theta,r,p,u,Theta,D_lo,D_hi,eps,delta"; }

std::string csv_metrics_row(double theta, const ChannelMetrics& mm) {
  char buf[512];
  double eps = mm.eps_delta ? mm.eps_delta->first : std::nan("");
  double delta = mm.eps_delta ? mm.eps_delta->second : std::nan("");
  std::snprintf(buf, sizeof(buf),
                "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g",
                theta, mm.r, mm.p, mm.u, mm.theta, mm.d_lower, mm.d_upper, eps, delta);
  return buf;
}

}  // namespace qec
