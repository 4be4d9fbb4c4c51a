#include "sawlab/reference.hpp"

#include <algorithm>
#include <functional>

namespace sawlab::ref {
namespace {

// walk as an explicit coordinate list; self-avoidance by linear scan
bool contains(const std::vector<Coord>& walk, const Coord& q) {
  return std::find(walk.begin(), walk.end(), q) != walk.end();
}

void all_saws(const LatticeSpec& spec, int n,
              const std::function<void(const std::vector<Coord>&)>& emit) {
  auto steps = step_set(spec);
  std::vector<Coord> walk{Coord{}};
  std::function<void()> rec = [&] {
    emit(walk);
    if (static_cast<int>(walk.size()) == n + 1) return;
    for (const auto& s : steps) {
      Coord q = walk.back();
      for (int i = 0; i < spec.d; ++i) q[i] += s[i];
      if (contains(walk, q)) continue;
      walk.push_back(q);
      rec();
      walk.pop_back();
    }
  };
  rec();
}

}  // namespace

std::vector<Int> count_walks(const LatticeSpec& spec, int n) {
  std::vector<Int> c(n + 1, Int(0));
  all_saws(spec, n, [&](const std::vector<Coord>& w) { c[w.size() - 1] += 1; });
  return c;
}

std::vector<std::map<Coord, Int>> endpoint_tables(const LatticeSpec& spec, int n) {
  std::vector<std::map<Coord, Int>> t(n + 1);
  all_saws(spec, n,
           [&](const std::vector<Coord>& w) { t[w.size() - 1][w.back()] += 1; });
  return t;
}

std::vector<Int> count_bridges(const LatticeSpec& spec, int n) {
  std::vector<Int> b(n + 1, Int(0));
  all_saws(spec, n, [&](const std::vector<Coord>& w) {
    int x1n = w.back()[0];
    for (size_t i = 1; i < w.size(); ++i)
      if (w[i][0] < 1 || w[i][0] > x1n) return;
    b[w.size() - 1] += 1;
  });
  return b;
}

std::vector<Int> count_half_space(const LatticeSpec& spec, int n) {
  std::vector<Int> h(n + 1, Int(0));
  all_saws(spec, n, [&](const std::vector<Coord>& w) {
    for (size_t i = 1; i < w.size(); ++i)
      if (w[i][0] < 1) return;
    h[w.size() - 1] += 1;
  });
  return h;
}

std::vector<Rat> weighted_counts(const LatticeSpec& spec, int n, const Rat& lambda) {
  auto steps = step_set(spec);
  std::vector<Rat> c(n + 1, Rat(0));
  std::vector<Coord> walk{Coord{}};
  auto weight = [&] {
    Rat w(1);
    for (size_t s = 0; s + 1 < walk.size(); ++s)
      for (size_t t = s + 1; t < walk.size(); ++t)
        if (walk[s] == walk[t]) w *= (Rat(1) - lambda);
    return w;
  };
  std::function<void()> rec = [&] {
    c[walk.size() - 1] += weight();
    if (static_cast<int>(walk.size()) == n + 1) return;
    for (const auto& s : steps) {
      Coord q = walk.back();
      for (int i = 0; i < spec.d; ++i) q[i] += s[i];
      walk.push_back(q);
      rec();
      walk.pop_back();
    }
  };
  rec();
  return c;
}

}  // namespace sawlab::ref
