// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "qec/channel.hpp"
#include "qec/stabilizer.hpp"
#include "qec/util.hpp"

namespace qec::toric {

// L x L square lattice with periodic boundaries, qubits on the 2L^2 edges.
// Horizontal edge h(r,c) joins vertices (r,c)-(r,c+1); vertical edge v(r,c)
// joins (r,c)-(r+1,c). Stars live on vertices, plaquettes on faces with
// top-left corner (r,c).
struct TorusLattice {
  int L = 0;
  int n = 0;

  int wrap(int a) const { return (a % L + L) % L; }
  int h_edge(int r, int c) const { return wrap(r) * L + wrap(c); }
  int v_edge(int r, int c) const { return L * L + wrap(r) * L + wrap(c); }
  bool is_horizontal(int e) const { return e < L * L; }
  int vertex(int r, int c) const { return wrap(r) * L + wrap(c); }

  std::vector<std::array<int, 4>> star_edges;  // indexed by vertex
  std::vector<std::array<int, 4>> plaq_edges;  // indexed by face

  // Edge supports of the standard straight logical representatives.
  // Z1: Z on row-0 horizontal edges; Z2: Z on column-0 vertical edges;
  // X1: X on column-0 horizontal edges; X2: X on row-0 vertical edges.
  std::vector<int> z1_support, z2_support, x1_support, x2_support;

  // Packed single-word forms, valid when n <= 64 (L <= 5).
  bool has_u64() const { return n <= 64; }
  std::vector<uint64_t> edge_star_mask;  // vertex defects flipped by a Z on edge e
  std::vector<uint64_t> edge_plaq_mask;  // face defects flipped by an X on edge e
  uint64_t z1_mask = 0, z2_mask = 0, x1_mask = 0, x2_mask = 0;

  // Image of each edge under the lattice duality (stars <-> plaquettes).
  std::vector<int> dual_edge;
};

TorusLattice make_torus(int L);  // odd L, 3 <= L <= 15

// Full stabilizer code: 2(L^2 - 1) generators (plaquettes row-major minus
// the last, then stars minus the last), straight logical representatives.
// At L = 3 the syndrome table is populated exhaustively for all 2^16
// syndromes with sector-wise minimal-weight standard errors.
StabilizerCode make_toric_code(int L);

// ---------------------------------------------------------------------------
// Decoding

struct DecodeResult {
  std::vector<int> edges;  // correction support (XOR of the pairing paths)
  int weight = 0;          // popcount of the support
  int pairing_cost = 0;    // sum of geodesic path lengths
  // Parity of the correction against the two dual logical supports; together
  // with an error's own parities this fixes its logical class.
  int class_parity = 0;
};

// Minimal-weight decoding by exhaustive-minimum defect pairing (computed with
// an exact subset DP) and deterministic geodesic path construction
// (horizontal-then-vertical; wrapping only when strictly shorter). The
// defect list is the set of flipped detectors: vertices for Z errors,
// faces for X errors (pass star = false). Rejects more than 12 defects or
// odd parity.
DecodeResult mwpm_decode(const TorusLattice& lat, const std::vector<int>& defects,
                         bool star_sector = true);

int torus_geodesic(const TorusLattice& lat, int va, int vb);

namespace detail {
// Deterministic geodesic route between two detectors (vertices in the star
// sector, faces in the plaquette sector): horizontal moves first, wrapping
// only when strictly shorter (L odd excludes ties).
struct PathInfo {
  int cost = 0;
  std::vector<int> edges;
  int parity = 0;  // class parity bits of the path
};
PathInfo route_path(const TorusLattice& lat, bool star, int from, int to);
int edge_class_parity(const TorusLattice& lat, bool star, int edge);
}  // namespace detail

// ---------------------------------------------------------------------------
// Sector tables and brute-force logical channels (single-axis noise)

// One CSS sector: Z-type errors checked by stars, or X-type checked by
// plaquettes. Class parity bits come from overlap with the dual logicals.
struct SectorView {
  bool star = true;  // true: Z errors / star detectors
  int n_det = 0;
  std::vector<uint64_t> edge_det;
  uint64_t dual1 = 0, dual2 = 0;  // class-detecting supports
  // Edge order used for lexicographic tie-breaking. The Z sector uses raw
  // edge indices; the X sector transports the same convention through the
  // lattice duality so the two sectors define one decoding convention.
  std::vector<int> lex_rank;
};
SectorView z_sector(const TorusLattice& lat);
SectorView x_sector(const TorusLattice& lat);

// Exhaustive per-syndrome standard errors for one sector (L = 3 only:
// full 2^18 scan). Ties broken by the lexicographically smallest edge
// bitmask; class-degenerate minima are flagged.
struct SectorTables {
  std::vector<uint64_t> error_mask;   // by full detector bit pattern
  std::vector<uint8_t> error_weight;
  std::vector<uint8_t> error_parity;  // class parity of the standard error
  std::vector<uint8_t> ambiguous;
  std::vector<uint8_t> reachable;     // even-parity patterns actually realized
};
SectorTables build_sector_tables_exhaustive(const TorusLattice& lat, const SectorView& view,
                                            int workers = 1);

// Sampled standard-error map for lattices too large for the exhaustive scan
// (L = 5): random errors are decoded and each syndrome keeps its decoded
// correction. Every entry satisfies weight(E_s) <= weight(sampled error).
struct SampledTable {
  std::map<uint64_t, std::pair<uint64_t, int>> entries;  // syndrome -> (mask, weight)
  long samples = 0;
  long weight_violations = 0;  // decoded heavier than the sampled error
};
SampledTable sampled_standard_errors(const TorusLattice& lat, long samples, uint64_t seed);

// Exhaustive enumeration of one sector grouped by (syndrome, class, weight).
// Amplitudes are applied afterwards, so one enumeration serves every
// rotation angle and every weight-only amplitude profile.
struct SectorCounts {
  int L = 0, nq = 0;
  SectorView view;
  SectorTables tables;
  std::vector<uint32_t> count;  // [(s * 4 + class) * (nq + 1) + w]
  uint32_t at(uint64_t s, int cl, int w) const {
    return count[(s * 4 + cl) * (nq + 1) + w];
  }
};
SectorCounts enumerate_sector_counts(const TorusLattice& lat, const SectorView& view,
                                     int workers = 1);

// Amplitude-by-weight profiles.
std::vector<cplx> uniform_rotation_amps(int nq, double theta);
// exp(-iH) amplitudes for H = h1 sum Z_e + h2 sum_{e<e'} Z_e Z_e'.
std::vector<cplx> correlated_pair_amps(int nq, double h1, double h2);

// Assembles the 16 x 16 logical chi matrix (two encoded qubits) for
// single-sector noise with the given amplitude profile.
ChiMatrix assemble_logical_chi(const SectorCounts& counts, const std::vector<cplx>& amp_by_weight);

// chi_Z1Z1-style contributions bucketed by the weights (w, w') of the left
// and right error; used by the incoherent and disconnected censuses.
Eigen::MatrixXcd chi_weight_buckets(const SectorCounts& counts,
                                    const std::vector<cplx>& amp_by_weight, int cl_left,
                                    int cl_right);

// Exact logical channel at L = 3 under uniform single-axis rotations.
ChiMatrix brute_force_logical_chi(const TorusLattice& lat, double theta, char axis = 'Z',
                                  int workers = 1);

// Per-edge rotation angles (Z axis), complex accumulation path.
ChiMatrix brute_force_logical_chi_angles(const TorusLattice& lat,
                                         const std::vector<double>& angles, int workers = 1);

// Logical Pauli indices in the 16 x 16 chi (two logical qubits, x | z << 2).
enum LogicalIndex : int {
  kI = 0, kX1 = 1, kX2 = 2, kX1X2 = 3,
  kZ1 = 4, kY1 = 5, kZ1X2 = 6, kY1X2 = 7,
  kZ2 = 8, kX1Z2 = 9, kY2 = 10, kX1Y2 = 11,
  kZ1Z2 = 12, kY1Z2 = 13, kZ1Y2 = 14, kY1Y2 = 15,
};

// ---------------------------------------------------------------------------
// Truncated string-sum oracle

struct AxisWeights {
  double nx = 0, ny = 0, nz = 1;  // rotation axis direction, |n| = 1
};

struct TruncatedChi {
  ChiMatrix chi;
  double tail_amplitude_bound = 0;  // neglected |amplitude| mass, exact bound
  double kept_bucket_mass = 0;      // max_s,a of sum |amp| within one bucket
  double comparison_bound = 0;      // rigorous per-entry bound vs the full sum
  long terms = 0;
};

// Sums every Pauli string of weight <= W. Single-axis when the axis is
// aligned with Z or X; general axes enumerate letters per edge (L = 3 only).
// Budget guard: C(2L^2, W) * letters^W <= 1e8.
TruncatedChi truncated_chi_oracle(const TorusLattice& lat, double theta, AxisWeights axis,
                                  int W);

// ---------------------------------------------------------------------------
// Logical strings, partitions, estimators

struct LogicalString {
  std::vector<int> edges;  // cyclic order; verts[i] joins edges[i-1], edges[i]
  std::vector<int> verts;
  int wind_x = 0, wind_y = 0;
  int length() const { return (int)edges.size(); }
};

// Self-avoiding homologically nontrivial cycles with |winding| = 1 around
// one handle, enumerated by a minimal-edge-anchored DFS. horizontal = true
// selects (+-1, 0) winding (Z1-type strings).
std::vector<LogicalString> enumerate_logical_strings(const TorusLattice& lat, int lmax,
                                                     bool horizontal = true);
std::map<int, long> string_counts(const std::vector<LogicalString>& strings);

struct ShapeReport {
  bool unit_steps = false;
  bool no_backtracking = false;
  int min_step_gap = 0;  // columns between consecutive vertical steps (cyclic)
  int step_count = 0;
  bool typical = false;  // unit steps, monotone, gaps >= gamma sqrt(L)
};
ShapeReport classify_string_shape(const TorusLattice& lat, const LogicalString& s,
                                  double gamma);

struct PartitionScan {
  cplx sum;                   // coefficient on the (rho Ltilde) side
  cplx closed_form;           // i C(l-1,(l-1)/2) (sin(theta)/2)^l
  long total = 0;
  long exceptional = 0;
  long anomalous = 0;  // side decoded outside {identity, string class}
  double exceptional_fraction = 0;
  double lemma4_bound = 0;  // (zeta+1) exp(gamma^2) 2^{-gamma sqrt(L)}
};
// Iterates all 2^l bipartitions of the string, classifying each side with
// the exact matching decoder. l <= 25.
PartitionScan partition_scan(const TorusLattice& lat, const LogicalString& s, double theta,
                             double gamma = 0.5, int zeta = 2);

struct EstimatorReport {
  cplx value;
  double magnitude = 0;
  double tail_budget = 0;       // alpha L^{2 zeta + 1} |sin theta|^{L + 2 zeta}
  double leading_term = 0;      // lowest-length contribution
  double xi_crude = 0;          // L (sin theta)^{L+1} variant (incoherent)
  std::map<int, double> per_length;
};
EstimatorReport coherent_estimator(const TorusLattice& lat, double theta, int zeta);
EstimatorReport incoherent_estimator(const TorusLattice& lat, double theta, int zeta);

struct Theorem5Report {
  double lhs = 0;  // sum_{i != j} |chi_ij|^2
  double rhs = 0;  // (2 / sin^2 theta) (sum_{l != 0} chi_ll)^2
  bool holds = false;
  double error_budget = 0;       // 24 gamma zeta^2 / sqrt(L) + 1/L + (L sin)^2zeta
  double coh_incoh_ratio = 0;    // |chi_{Z1,I}| / chi_{Z1,Z1}
  double ratio_bound = 0;        // (1 / sin theta)(1 + E)
  double r = 0;                  // average infidelity of the logical channel
  double rm_quad_linear_pred = 0;  // predicted quadratic/linear ratio of r_m
};
Theorem5Report theorem5_ratio_check(const ChiMatrix& logical16, double theta, int L,
                                    int zeta = 2, double gamma = 0.5);

// ---------------------------------------------------------------------------
// Censuses and probes

struct RankedEntry {
  int a = 0, b = 0;
  double mag = 0;
};
struct ComponentCensus {
  std::vector<RankedEntry> ranked;  // all 256 entries, descending magnitude
  double z1i = 0, y1i = 0, z1z2i = 0;
  double max_double_nontrivial_offdiag = 0;
  bool dominance_ok = false;
  double product_ratio = 0;  // |chi_{Z1Z2,I}| / (|chi_{Z1,I}| |chi_{I,Z2}|)
  bool product_within_decade = false;
  double max_x_sector = 0;   // entries with X-type logical content
  double trace_residual = 0;
};
ComponentCensus logical_component_census(const ChiMatrix& logical16);

struct IncoherentCensus {
  double equal_weight_total = 0;
  double mismatched_net = 0;          // signed net of w != w' buckets
  double mismatched_abs_ratio = 0;    // |mismatched| / equal-weight
  double multiplicity_lhs = 0;        // sum over O_U of |{O_U'}| / |{O_C'}|
  long multiplicity_count = 0;        // number of O_U in the sum
  bool multiplicity_ok = false;       // lhs >= count
  long strings_checked = 0;
};
IncoherentCensus incoherent_census(const TorusLattice& lat, double theta, int workers = 1);

struct DisconnectedProbe {
  double factor = 1.0;  // |brute chi_{Z1,I}| / |connected-only sum|
  std::map<int, double> cumulative_factor;  // by total-weight cap
};
DisconnectedProbe disconnected_factor_probe(const TorusLattice& lat, double theta,
                                            int workers = 1);

struct CorrelatedToricReport {
  cplx chi_z1z1, chi_z1i;
  double bound_rhs = 0;
  bool bound_ok = false;
  double enhancement = 0;  // |chi_{Z1,I}(h2)| / |chi_{Z1,I}(0)|
};
CorrelatedToricReport correlated_toric_probe(const TorusLattice& lat, double h1, double h2,
                                             int workers = 1);

}  // namespace qec::toric
