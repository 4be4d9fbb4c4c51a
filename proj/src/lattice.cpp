#include "sawlab/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace sawlab {

LatticeSpec parse_lattice(const std::string& s) {
  LatticeSpec spec;
  spec.name = s;
  auto fail = [&] { throw std::invalid_argument("unknown lattice spec: " + s); };
  if (s.size() >= 2 && s[0] == 'z' && s[1] == 'd') {
    auto dash = s.find("-so");
    if (dash == std::string::npos) fail();
    try {
      spec.d = std::stoi(s.substr(2, dash - 2));
      spec.range = std::stoi(s.substr(dash + 3));
    } catch (...) {
      fail();
    }
  } else if (!s.empty() && s[0] == 'z') {
    try {
      spec.d = std::stoi(s.substr(1));
    } catch (...) {
      fail();
    }
    spec.range = 1;
  } else {
    fail();
  }
  if (spec.d < 1 || spec.d > kMaxDim || spec.range < 1) fail();
  return spec;
}

std::vector<Coord> step_set(const LatticeSpec& spec) {
  std::vector<Coord> out;
  if (spec.range == 1) {
    for (int i = 0; i < spec.d; ++i)
      for (int s : {1, -1}) {
        Coord c{};
        c[i] = s;
        out.push_back(c);
      }
  } else {
    Coord c{};
    for (int i = 0; i < spec.d; ++i) c[i] = -spec.range;
    while (true) {
      bool zero = std::all_of(c.begin(), c.begin() + spec.d, [](int v) { return v == 0; });
      if (!zero) out.push_back(c);
      int i = spec.d - 1;
      while (i >= 0 && c[i] == spec.range) c[i--] = -spec.range;
      if (i < 0) break;
      ++c[i];
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AxisMap> first_step_unfold_maps(const LatticeSpec& spec) {
  if (spec.range != 1)
    throw std::invalid_argument("first-step unfolding requires the nearest-neighbour step set");
  std::vector<AxisMap> maps;
  for (const auto& s : step_set(spec)) {
    int axis = 0, sgn = 0;
    for (int i = 0; i < spec.d; ++i)
      if (s[i] != 0) {
        axis = i;
        sgn = s[i];
      }
    // h_s maps the step s = sgn*e_axis to e1; a walk with first step s is
    // the h_s-preimage of one with first step e1, so endpoint tables unfold
    // as c_n(x) = sum_s T_{e1}(h_s(x)).
    AxisMap h;
    for (int i = 0; i < kMaxDim; ++i) {
      h.perm[i] = static_cast<int8_t>(i);
      h.sign[i] = 1;
    }
    std::swap(h.perm[0], h.perm[axis]);
    h.sign[axis] = static_cast<int8_t>(sgn);
    maps.push_back(h);
  }
  return maps;
}

}  // namespace sawlab
