// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "qec/exact.hpp"
#include "qec/toric.hpp"

namespace qec::toric {

namespace {

// Logical chi index for a Z-sector class (bit0: Z1 content, bit1: Z2) and
// an X-sector class (bit0: X1, bit1: X2).
constexpr int kZClassIdx[4] = {kI, kZ1, kZ2, kZ1Z2};
constexpr int kXClassIdx[4] = {kI, kX1, kX2, kX1X2};

}  // namespace

SectorCounts enumerate_sector_counts(const TorusLattice& lat, const SectorView& view,
                                     int workers) {
  if (!lat.has_u64() || lat.L != 3)
    throw std::invalid_argument("enumerate_sector_counts: exhaustive path is L = 3 only");
  SectorCounts out;
  out.L = lat.L;
  out.nq = lat.n;
  out.view = view;
  out.tables = build_sector_tables_exhaustive(lat, view);
  size_t nsyn = size_t(1) << view.n_det;
  size_t cells = nsyn * 4 * (lat.n + 1);
  out.count.assign(cells, 0);

  using Local = std::vector<uint32_t>;
  parallel_chunks<Local>(
      0, uint64_t(1) << lat.n, workers,
      [&](uint64_t lo, uint64_t hi, Local& local) {
        local.assign(cells, 0);
        uint64_t mask = lo ^ (lo >> 1);
        uint64_t syn = 0;
        int par = 0;
        for (int e = 0; e < lat.n; ++e) {
          if ((mask >> e) & 1) {
            syn ^= view.edge_det[e];
            par ^= detail::edge_class_parity(lat, view.star, e);
          }
        }
        int w = std::popcount(mask);
        auto record = [&]() {
          int cl = par ^ out.tables.error_parity[syn];
          local[(syn * 4 + cl) * (lat.n + 1) + w]++;
        };
        record();
        for (uint64_t k = lo + 1; k < hi; ++k) {
          int e = std::countr_zero(k);
          uint64_t mbit = uint64_t(1) << e;
          mask ^= mbit;
          syn ^= view.edge_det[e];
          par ^= detail::edge_class_parity(lat, view.star, e);
          w += (mask & mbit) ? 1 : -1;
          record();
        }
      },
      [&](Local& local) {
        if (local.empty()) return;
        for (size_t i = 0; i < cells; ++i) out.count[i] += local[i];
      });
  return out;
}

std::vector<cplx> uniform_rotation_amps(int nq, double theta) {
  double s = std::sin(theta / 2), c = std::cos(theta / 2);
  std::vector<cplx> amp(nq + 1);
  for (int w = 0; w <= nq; ++w)
    amp[w] = std::pow(c, nq - w) * std::pow(cplx(0.0, -s), w);
  return amp;
}

std::vector<cplx> correlated_pair_amps(int nq, double h1, double h2) {
  // psi(w) = 2^-n sum_x (-1)^{|S & x|} exp(-i E(|x|)), E a function of the
  // total X-parity weight only; grouped over (a = |S & x|, b = |x| - a).
  std::vector<cplx> phase(nq + 1);
  for (int p = 0; p <= nq; ++p) {
    double M = nq - 2.0 * p;
    double E = h1 * M + h2 * (M * M - nq) / 2.0;
    phase[p] = std::exp(cplx(0.0, -E));
  }
  std::vector<cplx> amp(nq + 1);
  double norm = std::ldexp(1.0, -nq);
  for (int w = 0; w <= nq; ++w) {
    KahanCplx acc;
    for (int a = 0; a <= w; ++a) {
      double ca = (double)binomial(w, a) * ((a % 2) ? -1.0 : 1.0);
      for (int b = 0; b <= nq - w; ++b)
        acc.add(ca * (double)binomial(nq - w, b) * phase[a + b]);
    }
    amp[w] = acc.value() * norm;
  }
  return amp;
}

ChiMatrix assemble_logical_chi(const SectorCounts& counts, const std::vector<cplx>& amp) {
  const int* cmap = counts.view.star ? kZClassIdx : kXClassIdx;
  std::array<std::array<KahanCplx, 4>, 4> acc;
  size_t nsyn = size_t(1) << counts.view.n_det;
  for (uint64_t s = 0; s < nsyn; ++s) {
    if (!counts.tables.reachable[s]) continue;
    cplx A[4] = {};
    bool any = false;
    for (int cl = 0; cl < 4; ++cl) {
      for (int w = 0; w <= counts.nq; ++w) {
        uint32_t c = counts.at(s, cl, w);
        if (c) {
          A[cl] += amp[w] * (double)c;
          any = true;
        }
      }
    }
    if (!any) continue;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) acc[a][b].add(A[a] * std::conj(A[b]));
  }
  ChiMatrix chi = ChiMatrix::zero(2);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) chi.m(cmap[a], cmap[b]) = acc[a][b].value();
  return chi;
}

Eigen::MatrixXcd chi_weight_buckets(const SectorCounts& counts, const std::vector<cplx>& amp,
                                    int cl_left, int cl_right) {
  int nw = counts.nq + 1;
  Eigen::MatrixXcd buckets = Eigen::MatrixXcd::Zero(nw, nw);
  size_t nsyn = size_t(1) << counts.view.n_det;
  for (uint64_t s = 0; s < nsyn; ++s) {
    if (!counts.tables.reachable[s]) continue;
    for (int w = 0; w < nw; ++w) {
      uint32_t cw = counts.at(s, cl_left, w);
      if (!cw) continue;
      cplx left = amp[w] * (double)cw;
      for (int w2 = 0; w2 < nw; ++w2) {
        uint32_t cw2 = counts.at(s, cl_right, w2);
        if (!cw2) continue;
        buckets(w, w2) += left * std::conj(amp[w2] * (double)cw2);
      }
    }
  }
  return buckets;
}

ChiMatrix brute_force_logical_chi(const TorusLattice& lat, double theta, char axis,
                                  int workers) {
  if (axis != 'Z' && axis != 'X')
    throw std::invalid_argument("brute_force_logical_chi: axis must be 'Z' or 'X'");
  SectorView view = axis == 'Z' ? z_sector(lat) : x_sector(lat);
  SectorCounts counts = enumerate_sector_counts(lat, view, workers);
  return assemble_logical_chi(counts, uniform_rotation_amps(lat.n, theta));
}

ChiMatrix brute_force_logical_chi_angles(const TorusLattice& lat,
                                         const std::vector<double>& angles, int workers) {
  if ((int)angles.size() != lat.n)
    throw std::invalid_argument("brute_force_logical_chi_angles: need one angle per edge");
  SectorView view = z_sector(lat);
  SectorTables tables = build_sector_tables_exhaustive(lat, view);
  double pref = 1.0;
  std::vector<cplx> ratio(lat.n);
  for (int e = 0; e < lat.n; ++e) {
    pref *= std::cos(angles[e] / 2);
    ratio[e] = cplx(0.0, -std::tan(angles[e] / 2));
  }
  size_t nsyn = size_t(1) << view.n_det;
  using Grid = std::vector<KahanCplx>;  // [syn * 4 + class]
  Grid total(nsyn * 4);
  parallel_chunks<Grid>(
      0, uint64_t(1) << lat.n, workers,
      [&](uint64_t lo, uint64_t hi, Grid& g) {
        g.assign(nsyn * 4, KahanCplx{});
        for (uint64_t k = lo; k < hi; ++k) {
          uint64_t mask = k ^ (k >> 1);
          uint64_t syn = 0;
          int par = 0;
          cplx amp(pref, 0.0);
          uint64_t mm = mask;
          while (mm) {
            int e = std::countr_zero(mm);
            mm &= mm - 1;
            syn ^= view.edge_det[e];
            par ^= detail::edge_class_parity(lat, view.star, e);
            amp *= ratio[e];
          }
          int cl = par ^ tables.error_parity[syn];
          g[syn * 4 + cl].add(amp);
        }
      },
      [&](Grid& g) {
        if (g.empty()) return;
        for (size_t i = 0; i < nsyn * 4; ++i) total[i].add(g[i].value());
      });
  std::array<std::array<KahanCplx, 4>, 4> acc;
  for (uint64_t s = 0; s < nsyn; ++s) {
    cplx A[4];
    for (int cl = 0; cl < 4; ++cl) A[cl] = total[s * 4 + cl].value();
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) acc[a][b].add(A[a] * std::conj(A[b]));
  }
  ChiMatrix chi = ChiMatrix::zero(2);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) chi.m(kZClassIdx[a], kZClassIdx[b]) = acc[a][b].value();
  return chi;
}

// ---------------------------------------------------------------------------
// Truncated string-sum oracle

namespace {

struct Record {
  uint64_t key;   // (syn << 9) | (w << 2) | relpar
  uint64_t mask;  // edge support, lexicographic tie-break
};

double tail_mass(int nq, double theta, double letter_sum, int W) {
  double s = std::abs(std::sin(theta / 2)), c = std::cos(theta / 2);
  KahanSum t;
  for (int w = W + 1; w <= nq; ++w)
    t.add((double)binomial(nq, w) * std::pow(s * letter_sum, w) * std::pow(c, nq - w));
  return t.value();
}

// Single-axis truncated sum; works for any L with n <= 64. The standard
// error of each syndrome group is its first record after sorting by
// (syndrome, weight, mask), which realizes the minimal-weight /
// lexicographic convention.
TruncatedChi truncated_single_axis(const TorusLattice& lat, double theta, bool z_axis, int W) {
  SectorView view = z_axis ? z_sector(lat) : x_sector(lat);
  std::vector<Record> records;
  uint64_t syn = 0, mask = 0;
  int par = 0;
  long terms = 0;

  // Depth-first over ordered edge subsets of size <= W.
  std::function<void(int, int)> dfs = [&](int first, int depth) {
    records.push_back({(syn << 9) | ((uint64_t)depth << 2) | (uint64_t)par, mask});
    ++terms;
    if (depth == W) return;
    for (int e = first; e < lat.n; ++e) {
      syn ^= view.edge_det[e];
      par ^= detail::edge_class_parity(lat, view.star, e);
      mask |= uint64_t(1) << e;
      dfs(e + 1, depth + 1);
      syn ^= view.edge_det[e];
      par ^= detail::edge_class_parity(lat, view.star, e);
      mask &= ~(uint64_t(1) << e);
    }
  };
  dfs(0, 0);

  auto lexed = [&](uint64_t m) {
    if (view.lex_rank.empty()) return m;
    uint64_t r = 0;
    while (m) {
      int e = std::countr_zero(m);
      m &= m - 1;
      r |= uint64_t(1) << view.lex_rank[e];
    }
    return r;
  };
  std::sort(records.begin(), records.end(), [&](const Record& a, const Record& b) {
    uint64_t ka = a.key >> 2, kb = b.key >> 2;
    return ka != kb ? ka < kb : lexed(a.mask) < lexed(b.mask);
  });

  std::vector<cplx> amp = uniform_rotation_amps(lat.n, theta);
  const int* cmap = z_axis ? kZClassIdx : kXClassIdx;
  std::array<std::array<KahanCplx, 4>, 4> acc;
  TruncatedChi out;
  out.terms = terms;
  size_t i = 0;
  while (i < records.size()) {
    uint64_t s = records[i].key >> 9;
    int tpar = (int)(records[i].key & 3);
    cplx A[4] = {};
    double bucket_mass = 0;
    size_t j = i;
    for (; j < records.size() && (records[j].key >> 9) == s; ++j) {
      int w = (int)((records[j].key >> 2) & 127);
      int cl = ((int)(records[j].key & 3)) ^ tpar;
      A[cl] += amp[w];
      bucket_mass += std::abs(amp[w]);
    }
    out.kept_bucket_mass = std::max(out.kept_bucket_mass, bucket_mass);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) acc[a][b].add(A[a] * std::conj(A[b]));
    i = j;
  }
  out.chi = ChiMatrix::zero(2);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) out.chi.m(cmap[a], cmap[b]) = acc[a][b].value();
  out.tail_amplitude_bound = tail_mass(lat.n, theta, 1.0, W);
  out.comparison_bound =
      2.0 * out.kept_bucket_mass * out.tail_amplitude_bound +
      out.tail_amplitude_bound * out.tail_amplitude_bound;
  return out;
}

// General-axis truncated sum at L = 3: letters X/Y/Z per chosen edge, class
// parities taken against both sector tables.
TruncatedChi truncated_general_axis(const TorusLattice& lat, double theta, AxisWeights axis,
                                    int W) {
  SectorTables zt = build_sector_tables_exhaustive(lat, z_sector(lat));
  SectorTables xt = build_sector_tables_exhaustive(lat, x_sector(lat));
  int nd = lat.L * lat.L;
  size_t cells = size_t(1) << (2 * nd);
  std::vector<cplx> A(cells * 16, cplx(0, 0));
  std::vector<double> bucket_mass(cells, 0.0);

  double s = std::sin(theta / 2), c = std::cos(theta / 2);
  double cn = std::pow(c, lat.n);
  cplx letter_amp[3] = {cplx(0, -s * axis.nx) / c, cplx(0, -s * axis.ny) / c,
                        cplx(0, -s * axis.nz) / c};
  // letter 0: X (x support), 1: Y (both), 2: Z (z support)
  long terms = 0;
  uint64_t syn_star = 0, syn_plaq = 0;
  int par = 0;

  std::function<void(int, int, cplx)> dfs = [&](int first, int depth, cplx amp) {
    uint64_t s_comb = syn_star | (syn_plaq << nd);
    A[s_comb * 16 + par] += amp;
    bucket_mass[s_comb] += std::abs(amp);
    ++terms;
    if (depth == W) return;
    for (int e = first; e < lat.n; ++e) {
      for (int letter = 0; letter < 3; ++letter) {
        if (letter_amp[letter] == cplx(0, 0)) continue;
        bool has_x = letter != 2, has_z = letter != 0;
        if (has_x) {
          syn_plaq ^= lat.edge_plaq_mask[e];
          par ^= detail::edge_class_parity(lat, false, e) << 2;
        }
        if (has_z) {
          syn_star ^= lat.edge_star_mask[e];
          par ^= detail::edge_class_parity(lat, true, e);
        }
        dfs(e + 1, depth + 1, amp * letter_amp[letter]);
        if (has_x) {
          syn_plaq ^= lat.edge_plaq_mask[e];
          par ^= detail::edge_class_parity(lat, false, e) << 2;
        }
        if (has_z) {
          syn_star ^= lat.edge_star_mask[e];
          par ^= detail::edge_class_parity(lat, true, e);
        }
      }
    }
  };
  dfs(0, 0, cplx(cn, 0));

  TruncatedChi out;
  out.terms = terms;
  out.chi = ChiMatrix::zero(2);
  std::vector<KahanCplx> acc(256);
  for (uint64_t sc = 0; sc < cells; ++sc) {
    if (bucket_mass[sc] == 0.0) continue;
    out.kept_bucket_mass = std::max(out.kept_bucket_mass, bucket_mass[sc]);
    uint64_t sz = sc & ((uint64_t(1) << nd) - 1);
    uint64_t sx = sc >> nd;
    int tpar = zt.error_parity[sz] | (xt.error_parity[sx] << 2);
    for (int pa = 0; pa < 16; ++pa) {
      cplx va = A[sc * 16 + pa];
      if (va == cplx(0, 0)) continue;
      int ca = pa ^ tpar;
      for (int pb = 0; pb < 16; ++pb) {
        cplx vb = A[sc * 16 + pb];
        if (vb == cplx(0, 0)) continue;
        int cb = pb ^ tpar;
        acc[ca * 16 + cb].add(va * std::conj(vb));
      }
    }
  }
  auto class_to_idx = [](int cl) {
    int zbits = cl & 3, xbits = (cl >> 2) & 3;
    return xbits | (zbits << 2);
  };
  for (int ca = 0; ca < 16; ++ca)
    for (int cb = 0; cb < 16; ++cb)
      out.chi.m(class_to_idx(ca), class_to_idx(cb)) = acc[ca * 16 + cb].value();
  double letter_sum = std::abs(axis.nx) + std::abs(axis.ny) + std::abs(axis.nz);
  out.tail_amplitude_bound = tail_mass(lat.n, theta, letter_sum, W);
  out.comparison_bound =
      2.0 * out.kept_bucket_mass * out.tail_amplitude_bound +
      out.tail_amplitude_bound * out.tail_amplitude_bound;
  return out;
}

}  // namespace

TruncatedChi truncated_chi_oracle(const TorusLattice& lat, double theta, AxisWeights axis,
                                  int W) {
  if (!lat.has_u64())
    throw std::invalid_argument("truncated_chi_oracle: requires n <= 64");
  if (W < 0 || W > lat.n) throw std::invalid_argument("truncated_chi_oracle: bad W");
  int letters = (axis.nx != 0) + (axis.ny != 0) + (axis.nz != 0);
  double budget = (double)binomial(lat.n, W) * std::pow((double)letters, W);
  if (budget > 1e8) throw std::invalid_argument("truncated_chi_oracle: budget exceeded");
  bool pure_z = axis.nx == 0 && axis.ny == 0;
  bool pure_x = axis.ny == 0 && axis.nz == 0;
  if (pure_z || pure_x) return truncated_single_axis(lat, theta, pure_z, W);
  if (lat.L != 3)
    throw std::invalid_argument("truncated_chi_oracle: general axes need L = 3");
  return truncated_general_axis(lat, theta, axis, W);
}

}  // namespace qec::toric
