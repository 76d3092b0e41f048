// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "qec/exact.hpp"
#include "qec/toric.hpp"
#include "support/strings.hpp"

using namespace qec;
using namespace qec::toric;

TEST_CASE("string counts at the first two lengths") {
  // Totals are L strings at length L and L * L(L-1) at length L + 2,
  // i.e. one and L(L-1) strings per seam-crossing point.
  for (int L : {3, 5, 9}) {
    TorusLattice lat = make_torus(L);
    auto counts = string_counts(enumerate_logical_strings(lat, L + 2, true));
    CHECK(counts[L] == L);
    CHECK(counts[L + 2] == (long)L * L * (L - 1));
  }
}

TEST_CASE("string counts respect the path-counting bound") {
  for (int L : {3, 5}) {
    TorusLattice lat = make_torus(L);
    auto counts = string_counts(enumerate_logical_strings(lat, L + 4, true));
    for (auto& [l, c] : counts) {
      CHECK(l >= L);
      CHECK((l - L) % 2 == 0);
      CHECK((double)c <= (double)L * std::pow((double)L, l - L) + 0.5);
    }
  }
  TorusLattice lat9 = make_torus(9);
  auto c9 = string_counts(enumerate_logical_strings(lat9, 13, true));
  CHECK((double)c9[13] <= 9.0 * std::pow(9.0, 4));
}

TEST_CASE("strings are self-avoiding nontrivial cycles") {
  TorusLattice lat = make_torus(5);
  auto strings = enumerate_logical_strings(lat, 9, true);
  for (const auto& s : strings) {
    CHECK(s.length() >= 5);
    CHECK(std::abs(s.wind_x) == 1);
    CHECK(s.wind_y == 0);
    std::set<int> edge_set(s.edges.begin(), s.edges.end());
    CHECK(edge_set.size() == s.edges.size());
    std::set<int> vert_set(s.verts.begin(), s.verts.end());
    CHECK(vert_set.size() == s.verts.size());
  }
  // Vertical sector winds the other handle.
  auto vstrings = enumerate_logical_strings(lat, 5, false);
  CHECK(vstrings.size() == 5);
  for (const auto& s : vstrings) {
    CHECK(s.wind_x == 0);
    CHECK(std::abs(s.wind_y) == 1);
  }
}

TEST_CASE("shape classification") {
  TorusLattice lat = make_torus(9);
  auto straight = enumerate_logical_strings(lat, 9, true);
  for (const auto& s : straight) {
    ShapeReport rep = classify_string_shape(lat, s, 0.5);
    CHECK(rep.typical);
    CHECK(rep.step_count == 0);
    CHECK(rep.no_backtracking);
  }
  // A height-2 jump is atypical.
  LogicalString jump = test_support::string_from_walk(
      lat, {{0, 0}, {0, 1}, {1, 1}, {2, 1}, {2, 2}, {2, 3}, {1, 3}, {0, 3},
            {0, 4}, {0, 5}, {0, 6}, {0, 7}, {0, 8}});
  CHECK(jump.length() == 13);
  ShapeReport rep = classify_string_shape(lat, jump, 0.5);
  CHECK(!rep.unit_steps);
  CHECK(!rep.typical);
  // Widely separated unit steps are typical.
  LogicalString gentle = test_support::string_from_walk(
      lat, {{0, 0}, {0, 1}, {0, 2}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6},
            {0, 6}, {0, 7}, {0, 8}});
  CHECK(gentle.length() == 11);
  ShapeReport rep2 = classify_string_shape(lat, gentle, 0.5);
  CHECK(rep2.unit_steps);
  CHECK(rep2.no_backtracking);
  CHECK(rep2.typical);
}

TEST_CASE("unit-step no-backtracking counts match the combinatorial formula") {
  // L * C(L, 2 zeta) * C(2 zeta, zeta) strings of length L + 2 zeta.
  TorusLattice lat = make_torus(9);
  auto strings = enumerate_logical_strings(lat, 13, true);
  long unit = 0;
  for (const auto& s : strings) {
    if (s.length() != 13) continue;
    ShapeReport rep = classify_string_shape(lat, s, 0.0);
    if (rep.unit_steps && rep.no_backtracking) ++unit;
  }
  CHECK(unit == 9 * (long)(Int)(binomial(9, 4) * binomial(4, 2)));
}

TEST_CASE("partition sums equal the closed form on exception-free strings") {
  for (int L : {3, 5}) {
    TorusLattice lat = make_torus(L);
    auto strings = enumerate_logical_strings(lat, L + 2, true);
    long clean = 0;
    for (const auto& s : strings) {
      if (s.length() > L + 2) continue;
      PartitionScan ps = partition_scan(lat, s, 0.2);
      CHECK(ps.anomalous == 0);
      if (ps.exceptional != 0) continue;
      ++clean;
      CHECK(std::abs(ps.sum - ps.closed_form) <= 1e-12 * std::abs(ps.closed_form));
      // The closed form lies on the +i ray.
      CHECK(ps.sum.real() == 0.0);
    }
    CHECK(clean >= L);  // at least the straight strings
  }
  // Straight string at L = 9: no exceptional terms, exact equality.
  TorusLattice lat9 = make_torus(9);
  auto s9 = enumerate_logical_strings(lat9, 9, true);
  PartitionScan ps = partition_scan(lat9, s9.front(), 0.05);
  CHECK(ps.exceptional == 0);
  CHECK(ps.sum == ps.closed_form);
}

TEST_CASE("theta = 0 partition sum vanishes") {
  TorusLattice lat = make_torus(3);
  auto strings = enumerate_logical_strings(lat, 3, true);
  PartitionScan ps = partition_scan(lat, strings.front(), 0.0);
  CHECK(std::abs(ps.sum) == 0.0);
}

TEST_CASE("exceptional-term census on a length-15 string at L = 9") {
  TorusLattice lat = make_torus(9);
  LogicalString s15 = test_support::string_from_walk(
      lat, {{0, 0}, {0, 1}, {0, 2}, {1, 2}, {1, 3}, {0, 3}, {0, 4}, {0, 5},
            {1, 5}, {1, 6}, {0, 6}, {0, 7}, {0, 8}, {1, 8}, {1, 0}});
  CHECK(s15.length() == 15);
  PartitionScan ps = partition_scan(lat, s15, 0.05, 0.5, 3);
  CHECK(ps.anomalous == 0);
  CHECK(ps.exceptional > 0);
  CHECK(ps.exceptional_fraction <= ps.lemma4_bound);
  MESSAGE("exceptional fraction ", ps.exceptional_fraction, " vs bound ", ps.lemma4_bound);
}

TEST_CASE("estimators against the exact channel at L = 3") {
  TorusLattice lat = make_torus(3);
  for (double theta : {0.05, 0.1, 0.2}) {
    ChiMatrix brute = brute_force_logical_chi(lat, theta, 'Z');
    EstimatorReport coh = coherent_estimator(lat, theta, 2);
    EstimatorReport incoh = incoherent_estimator(lat, theta, 2);
    double z1i = std::abs(brute.m(kZ1, kI));
    double z1z1 = brute.m(kZ1, kZ1).real();
    CHECK(coh.magnitude >= 0.5 * z1i);
    CHECK(coh.magnitude <= 2.0 * z1i);
    CHECK(incoh.magnitude >= 0.5 * z1z1);
    CHECK(incoh.magnitude <= 2.0 * z1z1);
    // The incoherent estimate is a lower bound up to the small corrections.
    CHECK(incoh.magnitude <= z1z1 * 1.05);
    CHECK(incoh.xi_crude > 0.0);
  }
  // Lowest-order terms at tiny theta.
  ChiMatrix tiny = brute_force_logical_chi(lat, 0.01, 'Z');
  EstimatorReport coh = coherent_estimator(lat, 0.01, 2);
  double lead = coh.per_length.at(3);
  double sc = std::sin(0.01) / 2;
  CHECK(std::abs(lead - 3.0 * 2.0 * sc * sc * sc) < 1e-18);
  CHECK(std::abs(lead / std::abs(tiny.m(kZ1, kI)) - 1.0) < 0.05);
  CHECK_THROWS_AS((void)coherent_estimator(lat, 0.5, 2), std::domain_error);
}

TEST_CASE("estimator cross-check against the truncated oracle at L = 5") {
  TorusLattice lat = make_torus(5);
  TruncatedChi tr = truncated_chi_oracle(lat, 0.1, {0, 0, 1}, 5);
  EstimatorReport incoh = incoherent_estimator(lat, 0.1, 2);
  CHECK(std::abs(tr.chi.m(kZ1, kZ1).real() - incoh.magnitude) <= incoh.tail_budget);
}
