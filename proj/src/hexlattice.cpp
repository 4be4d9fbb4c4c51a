#include "sawlab/hexobs.hpp"

#include <stdexcept>

namespace sawlab::hex {

std::array<Vtx, 2> edge_ends(const MidEdge& e) {
  if (e.kind == 'S') return {Vtx{e.x, e.y}, Vtx{e.x + 1, e.y}};
  return {Vtx{e.x, e.y}, Vtx{e.x, e.y + 1}};
}

static bool even_site(int x, int y) { return ((x + y) % 2 + 2) % 2 == 0; }

std::array<Incidence, 3> incident_edges(const Vtx& v) {
  if (even_site(v.x, v.y))
    return {Incidence{{'H', v.x, v.y}, 0}, Incidence{{'S', v.x, v.y}, 2},
            Incidence{{'S', v.x - 1, v.y}, 4}};
  return {Incidence{{'S', v.x, v.y}, 1}, Incidence{{'H', v.x, v.y - 1}, 3},
          Incidence{{'S', v.x - 1, v.y}, 5}};
}

bool domain_connected(const HexDomain& dom) {
  if (dom.v.empty()) return true;
  std::set<Vtx> seen{*dom.v.begin()};
  std::vector<Vtx> queue{*dom.v.begin()};
  while (!queue.empty()) {
    Vtx v = queue.back();
    queue.pop_back();
    for (const auto& inc : incident_edges(v)) {
      auto ends = edge_ends(inc.e);
      Vtx w = ends[0] == v ? ends[1] : ends[0];
      if (dom.contains(w) && seen.insert(w).second) queue.push_back(w);
    }
  }
  return seen.size() == dom.v.size();
}

HexDomain single_hexagon() {
  HexDomain dom;
  for (auto [x, y] : {std::pair{0, 0}, {1, 0}, {2, 0}, {2, 1}, {1, 1}, {0, 1}})
    dom.v.insert(Vtx{x, y});
  return dom;
}

HexDomain strip_domain(int T, int L) {
  if (T < 1 || L < 1) throw std::invalid_argument("strip needs T, L >= 1");
  HexDomain dom;
  for (int y = 0; y <= T; ++y)
    for (int x = -2 * L - y; x <= 2 * L + 2 + y; ++x) dom.v.insert(Vtx{x, y});
  return dom;
}

StripBoundary strip_boundary(int T, int L) {
  if (T < 1 || L < 1) throw std::invalid_argument("strip needs T, L >= 1");
  StripBoundary sb;
  sb.a = MidEdge{'H', 1, -1};
  for (int x = 1 - 2 * L; x <= 1 + 2 * L; x += 2)
    sb.alpha.push_back(MidEdge{'H', x, -1});
  for (int x = -2 * L - T; x <= 2 * L + 2 + T; ++x)
    if (even_site(x, T)) sb.beta.push_back(MidEdge{'H', x, T});
  for (int y = 0; y <= T; ++y) {
    sb.eps.push_back(MidEdge{'S', 2 * L + 2 + y, y});
    sb.eps_bar.push_back(MidEdge{'S', -2 * L - y - 1, y});
  }
  return sb;
}

}  // namespace sawlab::hex
