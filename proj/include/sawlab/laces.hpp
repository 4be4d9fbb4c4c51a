#pragma once

// Lace combinatorics on integer intervals and the two independent routes to
// the expansion coefficients pi_m(x): direct lace resummation over the walk
// ensemble, and forward substitution in the convolution identity for c_n(x).

#include "sawlab/lattice.hpp"
#include "sawlab/walks.hpp"

#include <utility>
#include <vector>

namespace sawlab {

using Edge = std::pair<int, int>;         // (s, t) with s < t
using IntervalGraph = std::vector<Edge>;  // edge set on [a, b]

// connectivity: the open intervals (s, t) of the edges cover all of (a, b),
// and a and b are themselves edge endpoints; {0n} is connected on [0,n] while
// the chain {01, 12, ..., (n-1)n} is not (abutting intervals leave gaps)
bool is_connected(int a, int b, const IntervalGraph& g);

// the greedy lace of a connected graph: t1 = max{t : (a,t) in g}, then
// t_{i+1} = max{t : exists s < t_i, (s,t) in g}, s_{i+1} = min{s : (s,t_{i+1}) in g}
IntervalGraph lace_of(int a, int b, IntervalGraph g);

// C(L) = {st not in L : lace_of(L + st) == L}
std::vector<Edge> compatible_edges(int a, int b, const IntervalGraph& lace);

// all laces with exactly N edges on [a, b], generated from the interval
// characterisation (s1 = a, tN = b, s_{l+1} < t_l <= s_{l+2}); each output
// is verified to be a fixed point of lace_of
std::vector<IntervalGraph> laces(int a, int b, int N);

// pi tables: by_n[N][m] holds the nonnegative coefficient pi_m^(N)(x);
// signed[m](x) = sum_N (-1)^N pi_m^(N)(x)
struct PiTable {
  int m_max = 0;
  int n_max = 0;  // largest lace size considered; floor(m_max/2) suffices
  std::vector<std::vector<EndpointTable>> by_n;  // [N][m], N = 1..n_max
  std::vector<std::map<Coord, Int>> signed_sum;  // [m], entries may be negative
  std::vector<Int> hat_by_n(int N) const;        // pi_hat_m^(N)(0), m = 0..m_max
  std::vector<Int> hat_signed() const;           // pi_hat_m(0), m = 0..m_max
};

// route 1: enumerate every m-step walk, every lace on [0, m], and resum
// prod U_st over the lace against prod (1 + U) over its compatible edges
PiTable pi_via_laces(const LatticeSpec& spec, int m_max, int n_max = 0,
                     const EnumConfig& cfg = {});

// route 2: solve c_n(x) = (c_1 * c_{n-1})(x) + sum_m (pi_m * c_{n-m})(x)
// for pi_m(x) by forward substitution from the exact count tables
std::vector<std::map<Coord, Int>> pi_via_recursion(const LatticeSpec& spec,
                                                   int m_max,
                                                   const EnumConfig& cfg = {});

// fixed-point iteration z <- (1 - Pi_hat_z(0)) / |Omega| on the truncated
// series; heuristic (truncation error is not rigorously bounded)
struct ZcEstimate {
  Real zc;
  Real mu;             // 1 / zc
  Real last_step;      // final successive-difference magnitude
  int iterations = 0;
  bool converged = false;
  bool tail_averaged = false;  // plain truncation diverged; last two partial
                               // sums were averaged to stabilise the map
};
ZcEstimate zc_fixed_point(const LatticeSpec& spec, int m_max,
                          int precision_bits = 106, int max_iter = 500,
                          const EnumConfig& cfg = {});

// K[a,b](omega) = prod_{a<=s<t<=b} (1 + U_st) and J[a,b] = sum over connected
// graphs of prod U_st, evaluated literally for one walk; used by the
// exhaustive small-interval identity tests
Rat K_product(const std::vector<Coord>& walk, int a, int b);
Rat J_connected_sum(const std::vector<Coord>& walk, int a, int b);

}  // namespace sawlab
