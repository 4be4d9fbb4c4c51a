#pragma once

// Bridge-based bounds on walk counts: the unfolding of half-space walks into
// bridges, the resulting count inequalities, and the derived bracket for the
// connective constant.

#include "sawlab/lattice.hpp"
#include "sawlab/walks.hpp"

#include <vector>

namespace sawlab {

// Reflect a half-space walk at the last attainment of its running maximum
// first coordinate, repeatedly, until the maximum is attained at the end.
// `parts` records the increase of the maximum produced by each round
// (the initial maximum first); the parts are strictly decreasing positive
// integers summing to the span of the resulting bridge.
struct UnfoldResult {
  std::vector<Coord> bridge;
  std::vector<int> parts;
};
UnfoldResult unfold_half_space_walk(std::vector<Coord> walk);

// Exhaustive verification of the unfolding and the count inequalities it
// yields, all in exact integers.
struct HwChainReport {
  int n = 0;
  bool unfold_produces_bridges = false;  // every image is a same-length bridge
  bool parts_strictly_decreasing = false;
  bool parts_sum_to_span = false;
  bool decorated_map_injective = false;  // (bridge, parts) determines the walk
  bool multiplicity_within_pd = false;   // per-bridge preimages <= P_D(span)
  bool hs_le_pd_bridge = false;          // h_n <= sum_A P_D(A) b_{n,A}
  bool hs_le_pd_total = false;           // h_n <= P_D(n) b_n
  bool c_le_hs_product = false;          // c_n <= sum_m h_{n-m} h_{m+1}
  bool c_le_bridge_pd = false;           // c_n <= b_{n+1} sum_m P_D(n-m) P_D(m+1)
  bool all() const {
    return unfold_produces_bridges && parts_strictly_decreasing &&
           parts_sum_to_span && decorated_map_injective &&
           multiplicity_within_pd && hs_le_pd_bridge && hs_le_pd_total &&
           c_le_hs_product && c_le_bridge_pd;
  }
};
HwChainReport hw_chain_check(const LatticeSpec& spec, int n,
                             const EnumConfig& cfg = {});

// Cauchy-Schwarz pairing of bridges: sum_x b_n(x)^2 counts bridge pairs with
// a common endpoint, and each pair closes into a long walk returning next to
// the origin, so sum_x b_n(x)^2 <= 2d (n+1)^2 c_{2n+1}(e1).
struct PolygonBoundCheck {
  int n;
  Int sum_b_sq;
  Int bound;  // 2d (n+1)^2 c_{2n+1}(e1)
  bool holds = false;
};
PolygonBoundCheck bridge_polygon_check(const LatticeSpec& spec, int n,
                                       const EnumConfig& cfg = {});

// [b_n^{1/n}, c_n^{1/n}] encloses the connective constant for every n:
// bridge counts are supermultiplicative, walk counts submultiplicative.
struct MuBracket {
  int n;
  Int b_n, c_n;
  Real lo, hi;  // evaluated at the requested precision
};
MuBracket mu_bracket(const LatticeSpec& spec, int n, int precision_bits = 170,
                     const EnumConfig& cfg = {});

}  // namespace sawlab
