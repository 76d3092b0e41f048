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

struct EdgeStep {
  int to;      // vertex reached
  int dx, dy;  // unrolled displacement
};

// The four moves out of vertex (r, c) with their edges.
std::array<std::pair<int, EdgeStep>, 4> moves_from(const TorusLattice& lat, int vtx) {
  int L = lat.L;
  int r = vtx / L, c = vtx % L;
  return {{
      {lat.h_edge(r, c), {lat.vertex(r, c + 1), +1, 0}},
      {lat.h_edge(r, c - 1), {lat.vertex(r, c - 1), -1, 0}},
      {lat.v_edge(r, c), {lat.vertex(r + 1, c), 0, +1}},
      {lat.v_edge(r - 1, c), {lat.vertex(r - 1, c), 0, -1}},
  }};
}

}  // namespace

std::vector<LogicalString> enumerate_logical_strings(const TorusLattice& lat, int lmax,
                                                     bool horizontal) {
  if (lmax > lat.L + 6)
    throw std::invalid_argument("enumerate_logical_strings: lmax above budget L + 6");
  std::vector<LogicalString> out;
  int L = lat.L;
  std::vector<char> visited(L * L, 0);
  std::vector<int> edges, verts;

  for (int anchor = 0; anchor < lat.n; ++anchor) {
    // Orient the anchor edge in its positive direction; every cycle is found
    // exactly once, anchored at its minimal edge.
    int u, dx0, dy0;
    if (lat.is_horizontal(anchor)) {
      u = lat.vertex(anchor / L, anchor % L);
      dx0 = 1;
      dy0 = 0;
    } else {
      int idx = anchor - L * L;
      u = lat.vertex(idx / L, idx % L);
      dx0 = 0;
      dy0 = 1;
    }
    EdgeStep first{};
    for (auto& [e, st] : moves_from(lat, u))
      if (e == anchor && st.dx == dx0 && st.dy == dy0) first = st;

    edges.assign(1, anchor);
    verts.assign(1, u);
    visited.assign(L * L, 0);
    visited[u] = 1;

    std::function<void(int, int, int)> dfs = [&](int cur, int dx, int dy) {
      int len = (int)edges.size();
      // Close the cycle when back at the start with the right winding.
      // Pruning: cheapest completion to (+-L, 0) or (0, +-L).
      int need;
      if (horizontal)
        need = std::min(std::abs(L - dx), std::abs(-L - dx)) + std::abs(dy);
      else
        need = std::abs(dx) + std::min(std::abs(L - dy), std::abs(-L - dy));
      if (len + need > lmax) return;
      for (auto& [e, st] : moves_from(lat, cur)) {
        if (e <= edges[0] || e == edges.back()) continue;
        int ndx = dx + st.dx, ndy = dy + st.dy;
        if (st.to == verts[0]) {
          bool winds = horizontal ? (std::abs(ndx) == L && ndy == 0)
                                  : (ndx == 0 && std::abs(ndy) == L);
          if (winds && len + 1 >= L) {
            LogicalString s;
            s.edges = edges;
            s.edges.push_back(e);
            s.verts = verts;
            s.wind_x = ndx / L;
            s.wind_y = ndy / L;
            out.push_back(std::move(s));
          }
          continue;
        }
        if (visited[st.to]) continue;
        visited[st.to] = 1;
        edges.push_back(e);
        verts.push_back(st.to);
        dfs(st.to, ndx, ndy);
        edges.pop_back();
        verts.pop_back();
        visited[st.to] = 0;
      }
    };
    visited[first.to] = 1;
    verts.push_back(first.to);
    dfs(first.to, dx0, dy0);
  }
  return out;
}

std::map<int, long> string_counts(const std::vector<LogicalString>& strings) {
  std::map<int, long> counts;
  for (const auto& s : strings) counts[s.length()]++;
  return counts;
}

ShapeReport classify_string_shape(const TorusLattice& lat, const LogicalString& s,
                                  double gamma) {
  ShapeReport rep;
  int L = lat.L;
  int l = s.length();
  int h_count = 0;
  for (int e : s.edges) h_count += lat.is_horizontal(e);
  rep.no_backtracking = (h_count == L);
  rep.step_count = l - h_count;

  rep.unit_steps = true;
  for (int i = 0; i < l; ++i) {
    bool a = !lat.is_horizontal(s.edges[i]);
    bool b = !lat.is_horizontal(s.edges[(i + 1) % l]);
    if (a && b) rep.unit_steps = false;
  }

  // Horizontal gaps between consecutive vertical steps along the cycle.
  rep.min_step_gap = L;
  std::vector<int> vpos;
  int run = 0;
  std::vector<int> gaps;
  int first_v = -1;
  for (int i = 0; i < l; ++i) {
    if (!lat.is_horizontal(s.edges[i])) {
      if (first_v < 0)
        first_v = i;
      else
        gaps.push_back(run);
      run = 0;
    } else if (first_v >= 0) {
      ++run;
    }
  }
  if (first_v >= 0 && rep.step_count >= 2) {
    // close the cycle: horizontal edges after the last step wrap to the first
    int head = 0;
    for (int i = 0; i < first_v; ++i) head += lat.is_horizontal(s.edges[i]);
    gaps.push_back(run + head);
    for (int g : gaps) rep.min_step_gap = std::min(rep.min_step_gap, g);
  }
  rep.typical = rep.unit_steps && rep.no_backtracking &&
                rep.min_step_gap >= gamma * std::sqrt((double)L);
  return rep;
}

PartitionScan partition_scan(const TorusLattice& lat, const LogicalString& s, double theta,
                             double gamma, int zeta) {
  int l = s.length();
  if (l > 25) throw std::invalid_argument("partition_scan: string longer than 25");
  PartitionScan out;
  out.total = (long)1 << l;

  // Pairwise geodesic costs and deterministic route parities between the
  // string's vertices.
  std::vector<std::vector<int>> cost(l, std::vector<int>(l, 0));
  std::vector<std::vector<int>> ppar(l, std::vector<int>(l, 0));
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) {
      detail::PathInfo p = detail::route_path(lat, true, s.verts[i], s.verts[j]);
      cost[i][j] = cost[j][i] = p.cost;
      ppar[i][j] = ppar[j][i] = p.parity;
    }

  // Exact matching over every even subset of the string's vertices, with the
  // class parity of the reconstructed minimal correction.
  size_t states = size_t(1) << l;
  std::vector<uint16_t> f(states, UINT16_MAX);
  std::vector<uint8_t> fpar(states, 0);
  f[0] = 0;
  for (size_t S = 1; S < states; ++S) {
    if (std::popcount(S) % 2 != 0) continue;
    int i = std::countr_zero(S);
    uint16_t best = UINT16_MAX;
    uint8_t bpar = 0;
    for (int j = i + 1; j < l; ++j) {
      if (!((S >> j) & 1)) continue;
      size_t rest = S ^ (size_t(1) << i) ^ (size_t(1) << j);
      if (f[rest] == UINT16_MAX) continue;
      uint16_t cand = (uint16_t)(f[rest] + cost[i][j]);
      if (cand < best) {
        best = cand;
        bpar = (uint8_t)(ppar[i][j] ^ fpar[rest]);
      }
    }
    f[S] = best;
    fpar[S] = bpar;
  }

  std::vector<int> epar(l);
  for (int i = 0; i < l; ++i)
    epar[i] = detail::edge_class_parity(lat, true, s.edges[i]);
  uint64_t full = (l == 64) ? ~uint64_t(0) : ((uint64_t(1) << l) - 1);
  int str_class = 0;
  for (int i = 0; i < l; ++i) str_class ^= epar[i];

  double sc = std::sin(theta) / 2.0;
  long phase_count[4] = {0, 0, 0, 0};
  long divisions = 0;

  uint64_t T = 0;
  int w = 0, relpar = 0;
  auto handle = [&](uint64_t t) {
    uint64_t D = t ^ (((t << 1) | (t >> (l - 1))) & full);
    int clT = relpar ^ fpar[D];
    if (clT == 0) return;  // visited via the complementary subset
    if (clT != str_class) {
      ++out.anomalous;
      return;
    }
    ++divisions;
    int w_u = w, w_c = l - w;
    phase_count[((w_u - w_c) % 4 + 4) % 4]++;
    if (w_u < w_c) ++out.exceptional;
  };
  handle(0);
  for (uint64_t k = 1; k < (uint64_t(1) << l); ++k) {
    int b = std::countr_zero(k);
    uint64_t mbit = uint64_t(1) << b;
    T ^= mbit;
    relpar ^= epar[b];
    w += (T & mbit) ? 1 : -1;
    handle(T);
  }

  double scl = std::pow(sc, l);
  out.sum = scl * (cplx((double)phase_count[0] - (double)phase_count[2],
                        (double)phase_count[1] - (double)phase_count[3]));
  out.closed_form = cplx(0.0, (double)binomial(l - 1, (l - 1) / 2) * scl);
  out.exceptional_fraction = divisions ? (double)out.exceptional / (double)divisions : 0.0;
  out.lemma4_bound = (zeta + 1) * std::exp(gamma * gamma) *
                     std::pow(2.0, -gamma * std::sqrt((double)lat.L));
  return out;
}

namespace {

EstimatorReport string_estimator(const TorusLattice& lat, double theta, int zeta,
                                 bool coherent) {
  double sin_t = std::sin(theta);
  if (lat.L * std::abs(sin_t) >= 1.0)
    throw std::domain_error("string estimator: requires L |sin theta| < 1");
  int lmax = lat.L + 2 * zeta;
  auto strings = enumerate_logical_strings(lat, lmax, true);
  auto counts = string_counts(strings);
  EstimatorReport rep;
  double sc = sin_t / 2.0;
  KahanSum total;
  for (auto& [l, cnt] : counts) {
    double term;
    if (coherent)
      term = (double)cnt * (double)binomial(l - 1, (l - 1) / 2) * std::pow(sc, l);
    else
      term = (double)cnt * (double)binomial(l, (l + 1) / 2) * std::pow(sc, l + 1);
    rep.per_length[l] = term;
    total.add(term);
  }
  rep.magnitude = total.value();
  rep.value = coherent ? cplx(0.0, rep.magnitude) : cplx(rep.magnitude, 0.0);
  double alpha = 1.0 / (1.0 - lat.L * std::abs(sin_t));
  rep.tail_budget = alpha * std::pow((double)lat.L, 2 * zeta + 1) *
                    std::pow(std::abs(sin_t), lat.L + 2 * zeta);
  int L = lat.L;
  rep.leading_term = coherent
                         ? (double)L * (double)binomial(L - 1, (L - 1) / 2) * std::pow(sc, L)
                         : (double)L * (double)binomial(L, (L + 1) / 2) * std::pow(sc, L + 1);
  rep.xi_crude = (double)L * std::pow(sin_t, L + 1);
  return rep;
}

}  // namespace

EstimatorReport coherent_estimator(const TorusLattice& lat, double theta, int zeta) {
  return string_estimator(lat, theta, zeta, true);
}

EstimatorReport incoherent_estimator(const TorusLattice& lat, double theta, int zeta) {
  return string_estimator(lat, theta, zeta, false);
}

Theorem5Report theorem5_ratio_check(const ChiMatrix& logical16, double theta, int L, int zeta,
                                    double gamma) {
  Theorem5Report rep;
  int d2 = (int)logical16.m.rows();
  KahanSum off, diag;
  for (int i = 0; i < d2; ++i) {
    for (int j = 0; j < d2; ++j)
      if (i != j) off.add(std::norm(logical16.m(i, j)));
    if (i != 0) diag.add(logical16.m(i, i).real());
  }
  double s2 = std::sin(theta) * std::sin(theta);
  rep.lhs = off.value();
  rep.rhs = 2.0 / s2 * diag.value() * diag.value();
  rep.holds = rep.lhs < rep.rhs;
  rep.error_budget = 24.0 * gamma * zeta * zeta / std::sqrt((double)L) + 1.0 / L +
                     std::pow(L * std::abs(std::sin(theta)), 2 * zeta);
  // Dominant coherent/incoherent pair.
  double best = 0;
  int best_a = kZ1;
  for (int a = 1; a < d2; ++a)
    if (std::abs(logical16.m(a, 0)) > best) {
      best = std::abs(logical16.m(a, 0));
      best_a = a;
    }
  double incoh = logical16.m(best_a, best_a).real();
  rep.coh_incoh_ratio = incoh > 0 ? best / incoh : 0.0;
  rep.ratio_bound = (1.0 / std::abs(std::sin(theta))) * (1.0 + rep.error_budget);
  rep.r = average_infidelity(chi_to_ptm(logical16));
  rep.rm_quad_linear_pred = 0.8 * rep.r / s2 * (1.0 + rep.error_budget);
  return rep;
}

}  // namespace qec::toric
