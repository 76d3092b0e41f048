// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

#include "qec/toric.hpp"

namespace qec::toric {

int torus_geodesic(const TorusLattice& lat, int a, int b) {
  int L = lat.L;
  int dr = std::abs(a / L - b / L);
  int dc = std::abs(a % L - b % L);
  return std::min(dr, L - dr) + std::min(dc, L - dc);
}

namespace detail {

int edge_class_parity(const TorusLattice& lat, bool star, int edge) {
  int L = lat.L;
  bool horiz = lat.is_horizontal(edge);
  int r = (horiz ? edge : edge - L * L) / L;
  int c = (horiz ? edge : edge - L * L) % L;
  if (star) {
    // Z-type support: class bits against X1 = h(*,0) and X2 = v(0,*).
    int p = 0;
    if (horiz && c == 0) p ^= 1;
    if (!horiz && r == 0) p ^= 2;
    return p;
  }
  // X-type support: class bits against Z1 = h(0,*) and Z2 = v(*,0).
  int p = 0;
  if (horiz && r == 0) p ^= 1;
  if (!horiz && c == 0) p ^= 2;
  return p;
}

PathInfo route_path(const TorusLattice& lat, bool star, int from, int to) {
  int L = lat.L;
  PathInfo out;
  int r = from / L, c = from % L;
  int r2 = to / L, c2 = to % L;
  int right = ((c2 - c) % L + L) % L;
  int down = ((r2 - r) % L + L) % L;
  bool go_right = right <= L - right;  // L odd: never equal unless zero
  bool go_down = down <= L - down;
  int hsteps = go_right ? right : L - right;
  int vsteps = go_down ? down : L - down;
  for (int i = 0; i < hsteps; ++i) {
    int e;
    if (star)
      e = go_right ? lat.h_edge(r, c) : lat.h_edge(r, c - 1);
    else
      e = go_right ? lat.v_edge(r, c + 1) : lat.v_edge(r, c);
    out.edges.push_back(e);
    c = lat.wrap(c + (go_right ? 1 : -1));
  }
  for (int i = 0; i < vsteps; ++i) {
    int e;
    if (star)
      e = go_down ? lat.v_edge(r, c) : lat.v_edge(r - 1, c);
    else
      e = go_down ? lat.h_edge(r + 1, c) : lat.h_edge(r, c);
    out.edges.push_back(e);
    r = lat.wrap(r + (go_down ? 1 : -1));
  }
  out.cost = hsteps + vsteps;
  for (int e : out.edges) out.parity ^= edge_class_parity(lat, star, e);
  return out;
}

// Exact minimum-cost perfect matching over <= 16 defects by subset DP with
// deterministic tie-breaking (lowest index pairs with the smallest optimal
// partner).
struct MatchResult {
  int cost = 0;
  std::vector<std::pair<int, int>> pairs;
};

MatchResult exact_matching(const std::vector<std::vector<int>>& d) {
  int k = (int)d.size();
  MatchResult res;
  if (k == 0) return res;
  size_t states = size_t(1) << k;
  std::vector<int> f(states, INT32_MAX);
  std::vector<int8_t> choice(states, -1);
  f[0] = 0;
  for (size_t S = 1; S < states; ++S) {
    if (std::popcount(S) % 2 != 0) continue;
    int i = std::countr_zero(S);
    for (int j = i + 1; j < k; ++j) {
      if (!((S >> j) & 1)) continue;
      size_t rest = S ^ (size_t(1) << i) ^ (size_t(1) << j);
      if (f[rest] == INT32_MAX) continue;
      int cand = f[rest] + d[i][j];
      if (cand < f[S]) {
        f[S] = cand;
        choice[S] = (int8_t)j;
      }
    }
  }
  size_t S = states - 1;
  res.cost = f[S];
  while (S) {
    int i = std::countr_zero(S);
    int j = choice[S];
    res.pairs.emplace_back(i, j);
    S ^= (size_t(1) << i) ^ (size_t(1) << j);
  }
  return res;
}

}  // namespace detail

DecodeResult mwpm_decode(const TorusLattice& lat, const std::vector<int>& defects,
                         bool star_sector) {
  if (defects.size() % 2 != 0)
    throw std::invalid_argument("mwpm_decode: odd defect parity is impossible");
  if (defects.size() > 12)
    throw std::invalid_argument("mwpm_decode: more than 12 defects rejected");
  std::vector<int> ds = defects;
  std::sort(ds.begin(), ds.end());
  int k = (int)ds.size();
  std::vector<std::vector<int>> d(k, std::vector<int>(k, 0));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) d[i][j] = torus_geodesic(lat, ds[i], ds[j]);
  detail::MatchResult m = detail::exact_matching(d);
  std::vector<char> support(lat.n, 0);
  DecodeResult out;
  out.pairing_cost = m.cost;
  for (auto [i, j] : m.pairs) {
    detail::PathInfo p = detail::route_path(lat, star_sector, ds[i], ds[j]);
    for (int e : p.edges) support[e] ^= 1;
  }
  for (int e = 0; e < lat.n; ++e) {
    if (support[e]) {
      out.edges.push_back(e);
      out.class_parity ^= detail::edge_class_parity(lat, star_sector, e);
    }
  }
  out.weight = (int)out.edges.size();
  return out;
}

SectorTables build_sector_tables_exhaustive(const TorusLattice& lat, const SectorView& view,
                                            int workers) {
  (void)workers;
  if (!lat.has_u64() || lat.L != 3)
    throw std::invalid_argument("build_sector_tables_exhaustive: L = 3 only");
  int nd = view.n_det;
  size_t nsyn = size_t(1) << nd;
  SectorTables t;
  t.error_mask.assign(nsyn, 0);
  t.error_weight.assign(nsyn, 255);
  t.error_parity.assign(nsyn, 0);
  t.ambiguous.assign(nsyn, 0);
  t.reachable.assign(nsyn, 0);
  std::vector<uint8_t> class_flags(nsyn, 0);

  auto lexed = [&](uint64_t m) {
    if (view.lex_rank.empty()) return m;
    uint64_t r = 0;
    uint64_t mm = m;
    while (mm) {
      int e = std::countr_zero(mm);
      mm &= mm - 1;
      r |= uint64_t(1) << view.lex_rank[e];
    }
    return r;
  };
  uint64_t syn = 0;
  int w = 0;
  uint64_t mask = 0;
  auto consider = [&](uint64_t m, uint64_t s, int wt) {
    if (!t.reachable[s] || wt < t.error_weight[s]) {
      t.reachable[s] = 1;
      t.error_weight[s] = (uint8_t)wt;
      t.error_mask[s] = m;
      int par = (std::popcount(m & view.dual1) & 1) | ((std::popcount(m & view.dual2) & 1) << 1);
      class_flags[s] = (uint8_t)(1 << par);
    } else if (wt == t.error_weight[s]) {
      int par = (std::popcount(m & view.dual1) & 1) | ((std::popcount(m & view.dual2) & 1) << 1);
      class_flags[s] |= (uint8_t)(1 << par);
      if (lexed(m) < lexed(t.error_mask[s])) t.error_mask[s] = m;
    }
  };
  consider(0, 0, 0);
  for (uint64_t k = 1; k < (uint64_t(1) << lat.n); ++k) {
    int bit = std::countr_zero(k);
    uint64_t mbit = uint64_t(1) << bit;
    mask ^= mbit;
    syn ^= view.edge_det[bit];
    w += (mask & mbit) ? 1 : -1;
    consider(mask, syn, w);
  }
  for (size_t s = 0; s < nsyn; ++s) {
    if (!t.reachable[s]) continue;
    t.error_parity[s] = (uint8_t)((std::popcount(t.error_mask[s] & view.dual1) & 1) |
                                  ((std::popcount(t.error_mask[s] & view.dual2) & 1) << 1));
    t.ambiguous[s] = std::popcount(class_flags[s]) > 1;
  }
  return t;
}

SampledTable sampled_standard_errors(const TorusLattice& lat, long samples, uint64_t seed) {
  if (!lat.has_u64())
    throw std::invalid_argument("sampled_standard_errors: requires n <= 64");
  SampledTable out;
  std::mt19937_64 rng(seed);
  SectorView view = z_sector(lat);
  for (long k = 0; k < samples; ++k) {
    uint64_t mask = 0;
    for (int e = 0; e < lat.n; ++e)
      if (rng() % 10 == 0) mask |= uint64_t(1) << e;
    uint64_t syn = 0;
    uint64_t mm = mask;
    while (mm) {
      int e = std::countr_zero(mm);
      mm &= mm - 1;
      syn ^= view.edge_det[e];
    }
    std::vector<int> defects;
    for (int v = 0; v < view.n_det; ++v)
      if ((syn >> v) & 1) defects.push_back(v);
    if (defects.size() > 12) continue;
    DecodeResult dec = mwpm_decode(lat, defects, true);
    uint64_t cmask = 0;
    for (int e : dec.edges) cmask |= uint64_t(1) << e;
    auto it = out.entries.find(syn);
    if (it == out.entries.end()) out.entries[syn] = {cmask, dec.weight};
    if (dec.weight > std::popcount(mask)) ++out.weight_violations;
    ++out.samples;
  }
  return out;
}

}  // namespace qec::toric
