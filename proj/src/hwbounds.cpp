#include "sawlab/hwbounds.hpp"
#include "sawlab/partitions.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sawlab {

UnfoldResult unfold_half_space_walk(std::vector<Coord> walk) {
  UnfoldResult out;
  int prev_max = 0;
  for (;;) {
    int n = static_cast<int>(walk.size()) - 1;
    int mx = 0, last = 0;
    for (int j = 0; j <= n; ++j)
      if (walk[j][0] >= mx) {
        mx = walk[j][0];
        last = j;
      }
    out.parts.push_back(mx - prev_max);
    prev_max = mx;
    if (last == n) break;
    // reflect the tail about x1 = mx; head keeps x1 <= mx, reflected tail
    // gets x1 > mx, so the result stays self-avoiding
    for (int j = last + 1; j <= n; ++j) walk[j][0] = 2 * mx - walk[j][0];
  }
  out.bridge = std::move(walk);
  return out;
}

HwChainReport hw_chain_check(const LatticeSpec& spec, int n, const EnumConfig& cfg) {
  HwChainReport rep;
  rep.n = n;

  auto pd = distinct_partitions(std::max(2 * n + 2, 4));
  auto walks = count_walks(spec, n + 1, Rat(1), false, cfg);
  auto bridges = count_bridges(spec, n + 1, false, cfg);
  auto half = count_half_space(spec, n + 1, cfg);

  // unfold every half-space walk of length exactly n
  rep.unfold_produces_bridges = true;
  rep.parts_strictly_decreasing = true;
  rep.parts_sum_to_span = true;
  std::set<std::pair<std::vector<Coord>, std::vector<int>>> images;
  std::map<std::vector<Coord>, Int> multiplicity;
  auto hs_walks = list_half_space_walks(spec, n);
  for (const auto& w : hs_walks) {
    auto u = unfold_half_space_walk(w);
    // image must be a bridge of the same length
    if (u.bridge.size() != w.size()) rep.unfold_produces_bridges = false;
    int span = u.bridge.back()[0];
    for (size_t i = 1; i < u.bridge.size(); ++i)
      if (u.bridge[i][0] < 1 || u.bridge[i][0] > span)
        rep.unfold_produces_bridges = false;
    for (size_t i = 1; i < u.parts.size(); ++i)
      if (u.parts[i] >= u.parts[i - 1]) rep.parts_strictly_decreasing = false;
    for (int p : u.parts)
      if (p < 1 && !(w.size() == 1 && p == 0)) rep.parts_strictly_decreasing = false;
    int sum = 0;
    for (int p : u.parts) sum += p;
    if (sum != span) rep.parts_sum_to_span = false;
    images.insert({u.bridge, u.parts});
    multiplicity[u.bridge] += 1;
  }
  rep.decorated_map_injective = images.size() == hs_walks.size();

  rep.multiplicity_within_pd = true;
  for (auto& [b, m] : multiplicity)
    if (m > pd[b.back()[0]]) rep.multiplicity_within_pd = false;

  // h_n <= sum_A P_D(A) b_{n,A} <= P_D(n) b_n
  Int rhs = 0;
  auto span_counts = count_bridges(spec, n, false, cfg);
  for (auto& [A, bA] : span_counts.by_span[n]) rhs += pd[A] * bA;
  rep.hs_le_pd_bridge = half[n] <= rhs;
  rep.hs_le_pd_total = half[n] <= pd[n] * span_counts.b[n];

  // c_n <= sum_{m=0}^{n} h_{n-m} h_{m+1}
  Int hh = 0;
  for (int m = 0; m <= n; ++m) hh += half[n - m] * half[m + 1];
  rep.c_le_hs_product = walks.c[n] <= hh;

  // c_n <= b_{n+1} sum_{m=0}^{n} P_D(n-m) P_D(m+1)
  Int pp = 0;
  for (int m = 0; m <= n; ++m) pp += pd[n - m] * pd[m + 1];
  rep.c_le_bridge_pd = walks.c[n] <= bridges.b[n + 1] * pp;

  return rep;
}

PolygonBoundCheck bridge_polygon_check(const LatticeSpec& spec, int n,
                                       const EnumConfig& cfg) {
  PolygonBoundCheck out;
  out.n = n;
  auto bridges = count_bridges(spec, n, true, cfg);
  out.sum_b_sq = 0;
  for (auto& [x, b] : bridges.by_endpoint[n]) out.sum_b_sq += b * b;
  auto walks = count_walks(spec, 2 * n + 1, Rat(1), true, cfg);
  auto it = walks.by_endpoint[2 * n + 1].find(e1());
  Int ce1 = it == walks.by_endpoint[2 * n + 1].end() ? Int(0) : it->second;
  out.bound = Int(2 * spec.d) * Int(n + 1) * Int(n + 1) * ce1;
  out.holds = out.sum_b_sq <= out.bound;
  return out;
}

MuBracket mu_bracket(const LatticeSpec& spec, int n, int precision_bits,
                     const EnumConfig& cfg) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  MuBracket out;
  out.n = n;
  out.c_n = count_walks(spec, n, Rat(1), false, cfg).c[n];
  out.b_n = count_bridges(spec, n, false, cfg).b[n];
  set_precision_bits(precision_bits);
  out.lo = pow(Real(out.b_n), Real(1) / n);
  out.hi = pow(Real(out.c_n), Real(1) / n);
  return out;
}

}  // namespace sawlab
