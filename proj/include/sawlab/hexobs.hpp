#pragma once
// Parafermionic observable on finite honeycomb domains.
//
// Brick-wall coordinates: vertices are integer pairs (x, y), with x + y even
// marking the A sublattice.  "S" edges join (x, y)-(x+1, y) and always exist;
// "H" edges join (x, y)-(x, y+1) and exist only when x + y is even.  Placing
// a vertex at ((3/2) y + (1/2) [x+y even], (sqrt(3)/2) x) makes every edge
// unit length, every vertex trivalent, and every edge direction a multiple of
// pi/3, so walks turn by exactly +-pi/3 at each vertex they cross.

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "sawlab/arith.hpp"
#include "sawlab/walks.hpp"

namespace sawlab::hex {

struct Vtx {
  int x = 0, y = 0;
  auto operator<=>(const Vtx&) const = default;
};

struct MidEdge {
  char kind = 'S';  // 'S' or 'H'
  int x = 0, y = 0;
  auto operator<=>(const MidEdge&) const = default;
};

std::array<Vtx, 2> edge_ends(const MidEdge& e);

// the three edges at a vertex, each with its direction index (multiple of
// pi/3) pointing from the vertex toward the edge midpoint
struct Incidence {
  MidEdge e;
  int dir = 0;
};
std::array<Incidence, 3> incident_edges(const Vtx& v);

struct HexDomain {
  std::set<Vtx> v;
  bool contains(const Vtx& p) const { return v.count(p) != 0; }
};

// all vertices reachable from any one of them through lattice edges
bool domain_connected(const HexDomain& dom);

// the face {(0,0),(1,0),(2,0),(2,1),(1,1),(0,1)}
HexDomain single_hexagon();

// rows y = 0..T, row y spanning -2L-y <= x <= 2L+2+y (lateral cuts at pi/3)
HexDomain strip_domain(int T, int L);

// boundary half-edges of the strip: a and the bottom row alpha (a included),
// the top row beta, and the right/left lateral families eps / eps_bar
struct StripBoundary {
  MidEdge a;
  std::vector<MidEdge> alpha, beta, eps, eps_bar;
};
StripBoundary strip_boundary(int T, int L);

// walks from a are binned per final mid-edge by (vertices visited ell, turn
// counter in units of pi/3); evaluation happens on the histogram afterwards,
// in a fixed iteration order, so repeated evaluations at different (z, sigma)
// reuse one enumeration and sum bit-identically
using TurnHist = std::map<std::pair<int, int>, Int>;

struct HexField {
  MidEdge a;
  std::map<MidEdge, TurnHist> walks;

  // F_z(x) = sum over walks of e^{-i sigma W} z^ell with W = pi/3 * turns
  Cplx eval(const MidEdge& x, const Real& z, const Rat& sigma) const;
  // same sum with every phase replaced by 1
  Real unsigned_sum(const MidEdge& x, const Real& z) const;
};

// exact enumeration of all self-avoiding mid-edge walks started at the
// boundary mid-edge a (exactly one endpoint of a must lie in the domain)
HexField enumerate_field(const HexDomain& dom, const MidEdge& a,
                         std::uint64_t node_budget = 0);

struct ObservableValue {
  MidEdge x;
  Cplx value;
  Real unsigned_bound;  // sum of z^ell over the same walks; |value| <= this
};

std::map<MidEdge, ObservableValue> observable(const HexDomain& dom,
                                              const MidEdge& a, const Real& z,
                                              const Rat& sigma,
                                              std::uint64_t node_budget = 0);

// 1 / sqrt(2 + sqrt 2) at the current working precision
Real critical_z();

// max over domain vertices v of |sum over the three edges e at v of
// dir(v, e) F(e)|, at the given z and sigma
Real vertex_identity_residual(const HexDomain& dom, const MidEdge& a,
                              const Real& z, const Rat& sigma,
                              std::uint64_t node_budget = 0);

// the same residual pinned at z = critical_z(), sigma = 5/8, after setting
// the working precision; exact in truth, so what returns is pure rounding
Real vertex_identity_check(const HexDomain& dom, const MidEdge& a,
                           int precision_bits, std::uint64_t node_budget = 0);

// sum over all boundary half-edges p (one endpoint inside) of the outward
// unit direction times F(p), at z = critical_z(), sigma = 5/8.  Interior
// mid-edge terms of the summed vertex identities cancel in pairs, so this
// vanishes on every finite domain regardless of its shape.
Real boundary_telescope_check(const HexDomain& dom, const MidEdge& a,
                              int precision_bits,
                              std::uint64_t node_budget = 0);

// A: walks from a back to the bottom (alpha minus a itself), B: to the top
// beta, E: to either lateral family; each weighted z^ell, no phases
struct StripSums {
  int T = 0, L = 0;
  Real A, B, E;
};
StripSums strip_sums(int T, int L, const Real& z, std::uint64_t node_budget = 0);

// |cos(3pi/8) A + B + cos(pi/4) E - 1| at z = critical_z(); windings_ok
// records that every enumerated walk carried the turn counter its boundary
// family dictates (beta 0, eps +2, eps_bar -2, alpha minus a +-3)
struct StripIdentityReport {
  int T = 0, L = 0;
  Real A, B, E;
  Real residual;
  bool windings_ok = false;
};
StripIdentityReport strip_identity_check(int T, int L, int precision_bits,
                                         std::uint64_t node_budget = 0);

// A and B increase in L and E decreases, so at finite L the infinite-strip
// sums are bracketed: A* in [A_L, A_L + c_eps E_L / c_alpha], B* >= B_L,
// B* <= B_L + c_eps E_L.  The step inequality A*_{T+1} - A*_T <= z_c B*_{T+1}^2
// is decided from the brackets when they are tight enough.
enum class RecursionStatus { holds, inconclusive, violated };

struct RecursionStep {
  int T = 0;  // compares T against T + 1
  Real lhs_upper, lhs_lower, rhs_upper, rhs_lower;
  RecursionStatus status = RecursionStatus::inconclusive;
};

struct RecursionReport {
  int T_max = 0, L = 0;
  std::vector<RecursionStep> steps;
  bool any_violated = false;
};
RecursionReport strip_recursion_check(int T_max, int L,
                                      std::uint64_t node_budget = 0);

}  // namespace sawlab::hex
