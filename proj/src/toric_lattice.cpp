// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include <stdexcept>

#include "qec/toric.hpp"

namespace qec::toric {

TorusLattice make_torus(int L) {
  if (L < 3 || L > 15 || L % 2 == 0)
    throw std::invalid_argument("make_torus: L must be odd with 3 <= L <= 15");
  TorusLattice lat;
  lat.L = L;
  lat.n = 2 * L * L;
  lat.star_edges.resize(L * L);
  lat.plaq_edges.resize(L * L);
  for (int r = 0; r < L; ++r) {
    for (int c = 0; c < L; ++c) {
      lat.star_edges[lat.vertex(r, c)] = {lat.h_edge(r, c), lat.h_edge(r, c - 1),
                                          lat.v_edge(r, c), lat.v_edge(r - 1, c)};
      lat.plaq_edges[lat.vertex(r, c)] = {lat.h_edge(r, c), lat.h_edge(r + 1, c),
                                          lat.v_edge(r, c), lat.v_edge(r, c + 1)};
    }
  }
  for (int c = 0; c < L; ++c) {
    lat.z1_support.push_back(lat.h_edge(0, c));
    lat.x2_support.push_back(lat.v_edge(0, c));
  }
  for (int r = 0; r < L; ++r) {
    lat.z2_support.push_back(lat.v_edge(r, 0));
    lat.x1_support.push_back(lat.h_edge(r, 0));
  }
  if (lat.has_u64()) {
    lat.edge_star_mask.assign(lat.n, 0);
    lat.edge_plaq_mask.assign(lat.n, 0);
    for (int v = 0; v < L * L; ++v)
      for (int e : lat.star_edges[v]) lat.edge_star_mask[e] ^= uint64_t(1) << v;
    for (int f = 0; f < L * L; ++f)
      for (int e : lat.plaq_edges[f]) lat.edge_plaq_mask[e] ^= uint64_t(1) << f;
    auto pack = [&](const std::vector<int>& sup) {
      uint64_t m = 0;
      for (int e : sup) m |= uint64_t(1) << e;
      return m;
    };
    lat.z1_mask = pack(lat.z1_support);
    lat.z2_mask = pack(lat.z2_support);
    lat.x1_mask = pack(lat.x1_support);
    lat.x2_mask = pack(lat.x2_support);
  }
  // Duality: h(r,c) -> v(r-1,c), v(r,c) -> h(r,c-1); stars map onto
  // plaquettes and the two handles swap.
  lat.dual_edge.resize(lat.n);
  for (int r = 0; r < L; ++r)
    for (int c = 0; c < L; ++c) {
      lat.dual_edge[lat.h_edge(r, c)] = lat.v_edge(r - 1, c);
      lat.dual_edge[lat.v_edge(r, c)] = lat.h_edge(r, c - 1);
    }
  return lat;
}

SectorView z_sector(const TorusLattice& lat) {
  SectorView v;
  v.star = true;
  v.n_det = lat.L * lat.L;
  v.edge_det = lat.edge_star_mask;
  v.dual1 = lat.x1_mask;
  v.dual2 = lat.x2_mask;
  return v;
}

SectorView x_sector(const TorusLattice& lat) {
  SectorView v;
  v.star = false;
  v.n_det = lat.L * lat.L;
  v.edge_det = lat.edge_plaq_mask;
  v.dual1 = lat.z1_mask;
  v.dual2 = lat.z2_mask;
  v.lex_rank.resize(lat.n);
  for (int e = 0; e < lat.n; ++e) v.lex_rank[lat.dual_edge[e]] = e;
  return v;
}

StabilizerCode make_toric_code(int L) {
  TorusLattice lat = make_torus(L);
  StabilizerCode code;
  code.n = lat.n;
  code.k = 2;
  auto edge_bits = [&](const std::vector<int>& edges) {
    BitVec b(lat.n);
    for (int e : edges) b.flip(e);
    return b;
  };
  // Plaquettes (Z-type) row-major dropping the last, then stars (X-type).
  for (int f = 0; f < L * L - 1; ++f) {
    BitVec z(lat.n);
    for (int e : lat.plaq_edges[f]) z.flip(e);
    code.generators.push_back(PauliOp::hermitian(BitVec(lat.n), z));
  }
  for (int v = 0; v < L * L - 1; ++v) {
    BitVec x(lat.n);
    for (int e : lat.star_edges[v]) x.flip(e);
    code.generators.push_back(PauliOp::hermitian(x, BitVec(lat.n)));
  }
  code.logical_x.push_back(PauliOp::hermitian(edge_bits(lat.x1_support), BitVec(lat.n)));
  code.logical_x.push_back(PauliOp::hermitian(edge_bits(lat.x2_support), BitVec(lat.n)));
  code.logical_z.push_back(PauliOp::hermitian(BitVec(lat.n), edge_bits(lat.z1_support)));
  code.logical_z.push_back(PauliOp::hermitian(BitVec(lat.n), edge_bits(lat.z2_support)));
  code.build_logical_reps();

  if (L == 3) {
    // Sector-wise minimal-weight standard errors for every mixed syndrome.
    SectorTables zt = build_sector_tables_exhaustive(lat, z_sector(lat));
    SectorTables xt = build_sector_tables_exhaustive(lat, x_sector(lat));
    int nd = L * L;
    std::vector<PauliOp> z_err(size_t(1) << nd), x_err(size_t(1) << nd);
    std::vector<uint64_t> z_key(size_t(1) << nd), x_key(size_t(1) << nd);
    for (uint64_t s = 0; s < (uint64_t(1) << nd); ++s) {
      if (!zt.reachable[s] && !xt.reachable[s]) continue;
      if (zt.reachable[s]) {
        BitVec zb(lat.n);
        for (int e = 0; e < lat.n; ++e)
          if ((zt.error_mask[s] >> e) & 1) zb.flip(e);
        z_err[s] = PauliOp::hermitian(BitVec(lat.n), zb);
        z_key[s] = code.syndrome_bits(z_err[s]);
      }
      if (xt.reachable[s]) {
        BitVec xb(lat.n);
        for (int e = 0; e < lat.n; ++e)
          if ((xt.error_mask[s] >> e) & 1) xb.flip(e);
        x_err[s] = PauliOp::hermitian(xb, BitVec(lat.n));
        x_key[s] = code.syndrome_bits(x_err[s]);
      }
    }
    for (uint64_t sz = 0; sz < (uint64_t(1) << nd); ++sz) {
      if (!zt.reachable[sz]) continue;
      for (uint64_t sx = 0; sx < (uint64_t(1) << nd); ++sx) {
        if (!xt.reachable[sx]) continue;
        PauliOp e = x_err[sx] * z_err[sz];
        bool amb = zt.ambiguous[sz] || xt.ambiguous[sx];
        code.syndrome_table[z_key[sz] ^ x_key[sx]] = {e, amb};
      }
    }
  }
  return code;
}

}  // namespace qec::toric
