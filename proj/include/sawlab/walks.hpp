#pragma once
// Exact enumeration of self-avoiding walks and weighted walk ensembles on
// hypercubic lattices.  OpenMP-parallel kernels: the DFS tree is split at a
// fixed prefix depth into independent tasks; per-task tallies are 64/128-bit
// with checked overflow and are merged into arbitrary-precision totals, so
// results are identical for any worker count.  A deliberately naive serial
// reference implementation lives in reference.hpp and is used as the test
// oracle for these kernels.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sawlab/arith.hpp"
#include "sawlab/lattice.hpp"

namespace sawlab {

inline constexpr const char* kEngineVersion = "sawlab-engine/1.0.0";

struct BudgetExceeded : std::runtime_error {
  BudgetExceeded() : std::runtime_error("node budget exceeded") {}
};

struct EnumConfig {
  int threads = 0;            // 0: library default
  std::uint64_t node_budget = 0;  // 0: unlimited
  int split_depth = 3;        // parallel task prefix depth
};

using EndpointTable = std::map<Coord, Int>;

struct WalkCounts {
  std::vector<Int> c;                    // c[k] for k = 0..n, lambda-weighted if lambda<1
  std::vector<Rat> c_rat;                // used instead of c when lambda < 1
  std::vector<EndpointTable> by_endpoint;  // per length, only if requested (lambda = 1)
  std::vector<std::map<Coord, Rat>> by_endpoint_rat;  // per length, weighted runs
  bool weighted = false;
  Int count(int k) const { return weighted ? Int(0) : c.at(k); }
};

// c_n^{(lambda)}: lambda = 1 counts self-avoiding walks exactly; lambda in
// [0,1) sums prod_{s<t} (1 + lambda U_st) over all |Omega|^n walks in exact
// rational arithmetic.  Endpoint tables are included when with_endpoints.
WalkCounts count_walks(const LatticeSpec& spec, int n, const Rat& lambda,
                       bool with_endpoints = false, const EnumConfig& cfg = {});

struct BridgeCounts {
  std::vector<Int> b;                          // b[k], k = 0..n (b[0] = 1)
  std::vector<std::map<int, Int>> by_span;     // b[k][A]
  std::vector<EndpointTable> by_endpoint;      // per length, if requested
};
BridgeCounts count_bridges(const LatticeSpec& spec, int n, bool with_endpoints = false,
                           const EnumConfig& cfg = {});

// h[k]: walks with omega_1(i) > omega_1(0) for all i >= 1; h[0] = 1.
std::vector<Int> count_half_space(const LatticeSpec& spec, int n, const EnumConfig& cfg = {});

// Self-avoiding returns: walks of length m with omega(m) = omega(0) and all
// other sites distinct.  Zero for odd m on bipartite lattices by parity.
Int count_returns(const LatticeSpec& spec, int m, const EnumConfig& cfg = {});

// Polygon count q_{2n} = 2d c_{2n-1}(e1) / (2 * 2n); the division must be
// exact, anything else is a hard error.  q_2 = 1 by convention.
Int count_polygons(const LatticeSpec& spec, int two_n, const EnumConfig& cfg = {});

// Restricted lambda-weighted walk sums: all n-step walks from `from` to
// anywhere, with every visited site inside `domain` (which must contain
// `from`), in exact rationals; returns per-length endpoint tables.
struct RatTable {
  std::vector<std::map<Coord, Rat>> by_endpoint;  // [k][x]
};
RatTable count_restricted(const LatticeSpec& spec, int n, const Rat& lambda,
                          const std::vector<Coord>& domain, const Coord& from,
                          const EnumConfig& cfg = {});

// Streams every walk of the full ensemble (no self-avoidance) of length up
// to n, depth-first: enter(j, pos) is called when step j reaches pos (and
// may return false to prune), leave(j) unwinds.  Serial; used by the lace
// expansion to share one enumeration pass across its accumulators.
struct WalkVisitor {
  virtual bool enter(int j, const Coord& pos) = 0;
  virtual void leave(int j) = 0;
  virtual ~WalkVisitor() = default;
};
void for_each_walk(const LatticeSpec& spec, int n, WalkVisitor& v);

// Lists every half-space walk of length exactly n (small n only).
std::vector<std::vector<Coord>> list_half_space_walks(const LatticeSpec& spec, int n);

// Lists every self-avoiding walk of length exactly n (small n only).
std::vector<std::vector<Coord>> list_saws(const LatticeSpec& spec, int n);

}  // namespace sawlab
