#pragma once
// Hypercubic lattice step sets: nearest-neighbour Z^d and spread-out variants
// with steps 0 < |x|_inf <= L.  Step sets are symmetric under negation and
// listed in deterministic lexicographic order.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace sawlab {

constexpr int kMaxDim = 5;
using Coord = std::array<int, kMaxDim>;  // entries beyond d are zero

struct LatticeSpec {
  int d = 2;
  int range = 1;  // 1: nearest-neighbour; L>1: spread-out max-norm ball
  std::string name;

  bool operator==(const LatticeSpec& o) const { return d == o.d && range == o.range; }
};

// Accepts "z<d>" (nearest-neighbour) and "zd<d>-so<L>" (spread-out), d <= 5.
LatticeSpec parse_lattice(const std::string& s);

// Deterministic lexicographic order; symmetric under negation.
std::vector<Coord> step_set(const LatticeSpec& spec);

inline Coord origin() { return Coord{}; }

inline Coord e1() {
  Coord c{};
  c[0] = 1;
  return c;
}

// Signed-permutation transforms h_s with h_s(s) = e1, one per step, so that
// endpoint tables enumerated with a fixed first step e1 unfold to the full
// count: c_n(x) = sum_s T_e1(h_s(x)).  Nearest-neighbour lattices only.
struct AxisMap {
  std::array<int8_t, kMaxDim> perm;  // image axis index
  std::array<int8_t, kMaxDim> sign;
  Coord apply(const Coord& x) const {
    Coord y{};
    for (int i = 0; i < kMaxDim; ++i) y[perm[i]] = sign[i] * x[i];
    return y;
  }
  Coord apply_inverse(const Coord& y) const {
    Coord x{};
    for (int i = 0; i < kMaxDim; ++i) x[i] = sign[i] * y[perm[i]];
    return x;
  }
};
std::vector<AxisMap> first_step_unfold_maps(const LatticeSpec& spec);

}  // namespace sawlab
