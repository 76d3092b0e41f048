// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include <algorithm>
#include <bit>
#include <cmath>

#include "qec/exact.hpp"
#include "qec/toric.hpp"

namespace qec::toric {

ComponentCensus logical_component_census(const ChiMatrix& logical16) {
  ComponentCensus out;
  const auto& m = logical16.m;
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) out.ranked.push_back({a, b, std::abs(m(a, b))});
  std::sort(out.ranked.begin(), out.ranked.end(), [](const RankedEntry& x, const RankedEntry& y) {
    if (x.mag != y.mag) return x.mag > y.mag;
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });
  out.z1i = std::abs(m(kZ1, kI));
  out.y1i = std::abs(m(kY1, kI));
  out.z1z2i = std::abs(m(kZ1Z2, kI));
  for (int a = 1; a < 16; ++a)
    for (int b = 1; b < 16; ++b)
      if (a != b)
        out.max_double_nontrivial_offdiag =
            std::max(out.max_double_nontrivial_offdiag, std::abs(m(a, b)));
  out.dominance_ok = out.y1i < out.z1i && out.z1z2i < out.z1i &&
                     out.max_double_nontrivial_offdiag < out.z1i;
  double denom = out.z1i * std::abs(m(kI, kZ2));
  out.product_ratio = denom > 0 ? out.z1z2i / denom : 0.0;
  out.product_within_decade = out.product_ratio > 0.1 && out.product_ratio < 10.0;
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b)
      if ((a & 3) || (b & 3)) out.max_x_sector = std::max(out.max_x_sector, std::abs(m(a, b)));
  KahanSum others;
  for (int l = 1; l < 16; ++l) others.add(m(l, l).real());
  out.trace_residual = std::abs(m(0, 0).real() - (1.0 - others.value()));
  return out;
}

IncoherentCensus incoherent_census(const TorusLattice& lat, double theta, int workers) {
  IncoherentCensus out;
  SectorCounts counts = enumerate_sector_counts(lat, z_sector(lat), workers);
  std::vector<cplx> amps = uniform_rotation_amps(lat.n, theta);
  Eigen::MatrixXcd buckets = chi_weight_buckets(counts, amps, 1, 1);
  KahanSum equal, mism;
  for (int w = 0; w < buckets.rows(); ++w)
    for (int w2 = 0; w2 < buckets.cols(); ++w2) {
      if (w == w2)
        equal.add(buckets(w, w2).real());
      else
        mism.add(buckets(w, w2).real());
    }
  out.equal_weight_total = equal.value();
  out.mismatched_net = mism.value();
  out.mismatched_abs_ratio =
      out.equal_weight_total > 0 ? std::abs(out.mismatched_net) / out.equal_weight_total : 0.0;

  // Multiplicity sum of Lemma-style partner ratios: for each enumerated
  // string, each uncorrectable subset O_U of weight (l+1)/2 whose complement
  // has minimal weight, count same-(syndrome, weight, class) alternatives
  // exhaustively over the plaquette span.
  std::vector<uint64_t> span(256, 0);
  {
    std::vector<uint64_t> pmask(8, 0);
    for (int f = 0; f < 8; ++f)
      for (int e : lat.plaq_edges[f]) pmask[f] ^= uint64_t(1) << e;
    for (int c = 0; c < 256; ++c)
      for (int b = 0; b < 8; ++b)
        if ((c >> b) & 1) span[c] ^= pmask[b];
  }
  auto strings = enumerate_logical_strings(lat, lat.L + 4, true);
  KahanSum lhs;
  for (const auto& s : strings) {
    int l = s.length();
    uint64_t smask = 0;
    for (int e : s.edges) smask |= uint64_t(1) << e;
    int str_par = 0;
    for (int e : s.edges) str_par ^= detail::edge_class_parity(lat, true, e);
    for (uint64_t sub = 1; sub < (uint64_t(1) << l); ++sub) {
      if (std::popcount(sub) != (l + 1) / 2) continue;
      uint64_t tmask = 0;
      int relpar = 0;
      for (int i = 0; i < l; ++i)
        if ((sub >> i) & 1) {
          tmask |= uint64_t(1) << s.edges[i];
          relpar ^= detail::edge_class_parity(lat, true, s.edges[i]);
        }
      uint64_t defects = 0;
      uint64_t mm = tmask;
      while (mm) {
        int e = std::countr_zero(mm);
        mm &= mm - 1;
        defects ^= lat.edge_star_mask[e];
      }
      std::vector<int> dl;
      for (int v = 0; v < lat.L * lat.L; ++v)
        if ((defects >> v) & 1) dl.push_back(v);
      DecodeResult dec = mwpm_decode(lat, dl, true);
      int cl = relpar ^ dec.class_parity;
      if (cl != str_par) continue;                      // correctable side
      if (dec.weight != l - (l + 1) / 2) continue;      // complement not minimal
      uint64_t cmask = smask ^ tmask;
      int w_u = (l + 1) / 2, w_c = l - w_u;
      long cu = 0, cc = 0;
      for (int c = 0; c < 256; ++c) {
        if (std::popcount(tmask ^ span[c]) == w_u) ++cu;
        if (std::popcount(cmask ^ span[c]) == w_c) ++cc;
      }
      lhs.add((double)cu / (double)cc);
      ++out.multiplicity_count;
    }
    ++out.strings_checked;
  }
  out.multiplicity_lhs = lhs.value();
  out.multiplicity_ok = out.multiplicity_lhs >= (double)out.multiplicity_count - 1e-9;
  return out;
}

DisconnectedProbe disconnected_factor_probe(const TorusLattice& lat, double theta,
                                            int workers) {
  DisconnectedProbe out;
  SectorCounts counts = enumerate_sector_counts(lat, z_sector(lat), workers);
  std::vector<cplx> amps = uniform_rotation_amps(lat.n, theta);
  Eigen::MatrixXcd buckets = chi_weight_buckets(counts, amps, 1, 0);

  // Connected-only reference: the exact 2^l partition sum of every string,
  // so any deviation of the factor from 1 is purely the disconnected part.
  auto strings = enumerate_logical_strings(lat, lat.L + 6, true);
  std::map<int, cplx> conn;
  for (const auto& s : strings) {
    PartitionScan ps = partition_scan(lat, s, theta);
    conn[s.length()] += ps.sum;
  }

  for (int cap = lat.L; cap <= 2 * lat.n; cap += 2) {
    KahanCplx brute, connected;
    for (int w = 0; w < buckets.rows(); ++w)
      for (int w2 = 0; w2 < buckets.cols(); ++w2)
        if (w + w2 <= cap) brute.add(buckets(w, w2));
    for (auto& [l, v] : conn)
      if (l <= cap) connected.add(v);
    if (std::abs(connected.value()) > 0)
      out.cumulative_factor[cap] = std::abs(brute.value()) / std::abs(connected.value());
  }
  KahanCplx brute_total, conn_total;
  for (int w = 0; w < buckets.rows(); ++w)
    for (int w2 = 0; w2 < buckets.cols(); ++w2) brute_total.add(buckets(w, w2));
  for (auto& [l, v] : conn) conn_total.add(v);
  out.factor = std::abs(conn_total.value()) > 0
                   ? std::abs(brute_total.value()) / std::abs(conn_total.value())
                   : 1.0;
  return out;
}

CorrelatedToricReport correlated_toric_probe(const TorusLattice& lat, double h1, double h2,
                                             int workers) {
  if (std::abs(h1) > 0.5 || lat.n * std::abs(h2) > 0.5)
    throw std::domain_error("correlated_toric_probe: coupling too large");
  CorrelatedToricReport rep;
  SectorCounts counts = enumerate_sector_counts(lat, z_sector(lat), workers);
  ChiMatrix chi = assemble_logical_chi(counts, correlated_pair_amps(lat.n, h1, h2));
  rep.chi_z1z1 = chi.m(kZ1, kZ1);
  rep.chi_z1i = chi.m(kZ1, kI);
  int L = lat.L;
  rep.bound_rhs = (2.0 * L / (L + 1.0)) * std::tan(h1) * std::abs(rep.chi_z1i);
  rep.bound_ok =
      rep.chi_z1z1.real() >= rep.bound_rhs * (1.0 - 3.0 * lat.n * std::abs(h2));
  ChiMatrix chi0 = assemble_logical_chi(counts, correlated_pair_amps(lat.n, h1, 0.0));
  double base = std::abs(chi0.m(kZ1, kI));
  rep.enhancement = base > 0 ? std::abs(rep.chi_z1i) / base : 0.0;
  return rep;
}

}  // namespace qec::toric
