#pragma once

// Deliberately naive serial enumerators. These recompute the same quantities
// as the kernels in walks.hpp straight from the definitions, with no pruning
// tricks, no symmetry factors and no shared state, and serve as the test
// oracle for them.

#include "sawlab/lattice.hpp"
#include "sawlab/arith.hpp"

#include <map>
#include <vector>

namespace sawlab::ref {

// c_k, k = 0..n
std::vector<Int> count_walks(const LatticeSpec& spec, int n);

// c_k(x) tables, k = 0..n
std::vector<std::map<Coord, Int>> endpoint_tables(const LatticeSpec& spec, int n);

// b_k (first coordinate in (0, x1(k)] along the walk, maximum attained at the end)
std::vector<Int> count_bridges(const LatticeSpec& spec, int n);

// h_k (first coordinate strictly positive after the start)
std::vector<Int> count_half_space(const LatticeSpec& spec, int n);

// sum over all |Omega|^k walks of prod_{0<=s<t<=k} (1 + lambda*U_st),
// U_st = -[omega(s) == omega(t)], evaluated literally from the definition
std::vector<Rat> weighted_counts(const LatticeSpec& spec, int n, const Rat& lambda);

}  // namespace sawlab::ref
