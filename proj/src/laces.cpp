#include "sawlab/laces.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>

namespace sawlab {
namespace {

void check_edges(int a, int b, const IntervalGraph& g) {
  for (auto& [s, t] : g)
    if (s < a || t > b || s >= t)
      throw std::invalid_argument("malformed edge on interval");
}

// pair index over 0 <= s < t <= m
int pair_index(int m, int s, int t) {
  return s * m - s * (s - 1) / 2 + (t - s - 1);
}

}  // namespace

bool is_connected(int a, int b, const IntervalGraph& g) {
  if (a >= b) throw std::invalid_argument("interval must have a < b");
  check_edges(a, b, g);
  // open-interval covering of (a,b): every midpoint a+1/2, ..., b-1/2 and
  // every interior integer must lie strictly inside some edge
  for (int twice = 2 * a + 1; twice <= 2 * b - 1; ++twice) {
    bool covered = false;
    for (auto& [s, t] : g)
      if (2 * s < twice && twice < 2 * t) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

IntervalGraph lace_of(int a, int b, IntervalGraph g) {
  if (!is_connected(a, b, g)) throw std::invalid_argument("graph is not connected");
  IntervalGraph lace;
  int t1 = -1;
  for (auto& [s, t] : g)
    if (s == a) t1 = std::max(t1, t);
  lace.push_back({a, t1});
  int ti = t1;
  while (ti < b) {
    int tn = -1;
    for (auto& [s, t] : g)
      if (s < ti) tn = std::max(tn, t);
    int sn = b + 1;
    for (auto& [s, t] : g)
      if (t == tn && s < ti) sn = std::min(sn, s);
    if (tn <= ti) throw std::logic_error("lace construction failed to advance");
    lace.push_back({sn, tn});
    ti = tn;
  }
  std::sort(lace.begin(), lace.end());
  return lace;
}

std::vector<Edge> compatible_edges(int a, int b, const IntervalGraph& lace) {
  std::vector<Edge> out;
  for (int s = a; s < b; ++s)
    for (int t = s + 1; t <= b; ++t) {
      Edge e{s, t};
      if (std::find(lace.begin(), lace.end(), e) != lace.end()) continue;
      IntervalGraph g = lace;
      g.push_back(e);
      if (lace_of(a, b, g) == lace) out.push_back(e);
    }
  return out;
}

std::vector<IntervalGraph> laces(int a, int b, int N) {
  if (N < 1 || a >= b) return {};
  std::vector<IntervalGraph> out;
  if (N == 1) {
    out.push_back({{a, b}});
    return out;
  }
  // interleaved choice of s2, t1, s3, t2, ..., sN, t_{N-1} subject to
  // a = s1 < s2, s_{l+1} < t_l <= s_{l+2}, s_N < t_{N-1} < t_N = b
  std::vector<int> s(N + 1), t(N + 1);
  s[1] = a;
  t[N] = b;
  auto emit = [&] {
    IntervalGraph L;
    for (int i = 1; i <= N; ++i) {
      if (s[i] >= t[i]) return;
      L.push_back({s[i], t[i]});
    }
    std::sort(L.begin(), L.end());
    if (std::adjacent_find(L.begin(), L.end()) != L.end()) return;
    if (lace_of(a, b, L) == L) out.push_back(L);
  };
  // position i chooses s[i+1] then t[i] for i = 1..N-1
  std::function<void(int)> rec = [&](int i) {
    if (i == N) {
      emit();
      return;
    }
    int slo = i == 1 ? a + 1 : t[i - 1];  // s2 > a; s_{l+2} >= t_l
    for (s[i + 1] = slo; s[i + 1] <= b - 2; ++s[i + 1]) {
      int tlo = std::max(s[i + 1] + 1, i >= 2 ? t[i - 1] + 1 : a + 1);
      for (t[i] = tlo; t[i] <= b - 1; ++t[i]) {
        if (i >= 2 && t[i - 1] > s[i + 1]) continue;  // t_l <= s_{l+2}
        rec(i + 1);
      }
    }
  };
  rec(1);
  return out;
}

Rat K_product(const std::vector<Coord>& walk, int a, int b) {
  Rat k(1);
  for (int s = a; s < b; ++s)
    for (int t = s + 1; t <= b; ++t)
      if (walk[s] == walk[t]) k *= Rat(0);  // 1 + U_st with U_st = -1
  return k;
}

Rat J_connected_sum(const std::vector<Coord>& walk, int a, int b) {
  // only graphs whose every edge carries an equality contribute
  std::vector<Edge> eq;
  for (int s = a; s < b; ++s)
    for (int t = s + 1; t <= b; ++t)
      if (walk[s] == walk[t]) eq.push_back({s, t});
  if (eq.size() > 20) throw std::invalid_argument("too many equality pairs");
  Rat total(0);
  for (std::uint32_t sub = 1; sub < (1u << eq.size()); ++sub) {
    IntervalGraph g;
    for (size_t i = 0; i < eq.size(); ++i)
      if (sub >> i & 1) g.push_back(eq[i]);
    if (is_connected(a, b, g))
      total += (__builtin_popcount(sub) % 2 == 0) ? Rat(1) : Rat(-1);
  }
  return total;
}

std::vector<Int> PiTable::hat_by_n(int N) const {
  std::vector<Int> row(m_max + 1, Int(0));
  if (N < 1 || N > n_max) return row;
  for (int m = 0; m <= m_max; ++m)
    for (auto& [x, v] : by_n[N][m]) row[m] += v;
  return row;
}

std::vector<Int> PiTable::hat_signed() const {
  std::vector<Int> row(m_max + 1, Int(0));
  for (int m = 0; m <= m_max; ++m)
    for (auto& [x, v] : signed_sum[m]) row[m] += v;
  return row;
}

PiTable pi_via_laces(const LatticeSpec& spec, int m_max, int n_max,
                     const EnumConfig& cfg) {
  if (n_max <= 0) n_max = std::max(1, m_max - 1);
  n_max = std::min(n_max, std::max(1, m_max - 1));
  PiTable table;
  table.m_max = m_max;
  table.n_max = n_max;
  table.by_n.assign(n_max + 1, std::vector<EndpointTable>(m_max + 1));
  table.signed_sum.resize(m_max + 1);

  auto steps = step_set(spec);
  std::uint64_t nodes = 0;

  for (int m = 1; m <= m_max; ++m) {
    // precompute every lace on [0, m] with its compatible-edge mask
    struct LaceRec {
      int N;
      std::uint64_t l_mask, c_mask;
    };
    std::vector<LaceRec> recs;
    bool has_zero_edge_lace = false;
    for (int N = 1; N <= std::min(n_max, m); ++N)
      for (const auto& L : laces(0, m, N)) {
        LaceRec r{N, 0, 0};
        for (auto& [s, t] : L) r.l_mask |= std::uint64_t(1) << pair_index(m, s, t);
        for (auto& [s, t] : compatible_edges(0, m, L))
          r.c_mask |= std::uint64_t(1) << pair_index(m, s, t);
        recs.push_back(r);
        has_zero_edge_lace = true;
      }
    if (!has_zero_edge_lace) continue;

    // enumerate all m-step walks; per walk, build the equality mask over
    // site pairs and match it against every lace
    std::vector<std::map<Coord, long long>> tally(n_max + 1);
    std::vector<Coord> path(m + 1);
    path[0] = Coord{};
    std::function<void(int)> rec = [&](int depth) {
      if ((++nodes & 0xfff) == 0 && cfg.node_budget && nodes > cfg.node_budget)
        throw BudgetExceeded();
      if (depth == m) {
        // a lace needs an equality at 0 and one ending at m
        bool zero_eq = false, end_eq = false;
        for (int j = 1; j <= m && !zero_eq; ++j) zero_eq = path[j] == path[0];
        for (int j = 0; j < m && !end_eq; ++j) end_eq = path[j] == path[m];
        if (!zero_eq || !end_eq) return;
        std::uint64_t e_mask = 0;
        for (int sIdx = 0; sIdx < m; ++sIdx)
          for (int tIdx = sIdx + 1; tIdx <= m; ++tIdx)
            if (path[sIdx] == path[tIdx])
              e_mask |= std::uint64_t(1) << pair_index(m, sIdx, tIdx);
        for (const auto& r : recs)
          if ((e_mask & r.l_mask) == r.l_mask && (e_mask & r.c_mask) == 0)
            tally[r.N][path[m]] += 1;
        return;
      }
      for (const auto& st : steps) {
        path[depth + 1] = path[depth];
        for (int i = 0; i < spec.d; ++i) path[depth + 1][i] += st[i];
        rec(depth + 1);
      }
    };
    rec(0);

    for (int N = 1; N <= n_max; ++N)
      for (auto& [x, v] : tally[N]) {
        table.by_n[N][m][x] = v;
        table.signed_sum[m][x] += (N % 2 == 0 ? Int(v) : Int(-v));
      }
  }
  // drop exact zeros that cancelled in the signed sum
  for (auto& t : table.signed_sum)
    for (auto it = t.begin(); it != t.end();)
      it = it->second == 0 ? t.erase(it) : std::next(it);
  return table;
}

std::vector<std::map<Coord, Int>> pi_via_recursion(const LatticeSpec& spec,
                                                   int m_max,
                                                   const EnumConfig& cfg) {
  auto counts = count_walks(spec, m_max, Rat(1), true, cfg);
  const auto& c = counts.by_endpoint;

  auto convolve = [&](const std::map<Coord, Int>& f, const std::map<Coord, Int>& g) {
    std::map<Coord, Int> h;
    for (auto& [x, fv] : f)
      for (auto& [y, gv] : g) {
        Coord sum{};
        for (int i = 0; i < spec.d; ++i) sum[i] = x[i] + y[i];
        h[sum] += fv * gv;
      }
    return h;
  };

  std::vector<std::map<Coord, Int>> pi(m_max + 1);
  for (int m = 1; m <= m_max; ++m) {
    std::map<Coord, Int> rhs = convolve(c[1], c[m - 1]);
    for (int j = 2; j < m; ++j)
      for (auto& [x, v] : convolve(pi[j], c[m - j])) rhs[x] += v;
    std::map<Coord, Int> p;
    for (auto& [x, v] : c[m]) p[x] = v;
    for (auto& [x, v] : rhs) p[x] -= v;
    for (auto it = p.begin(); it != p.end();)
      it = it->second == 0 ? p.erase(it) : std::next(it);
    pi[m] = std::move(p);
  }
  return pi;
}

ZcEstimate zc_fixed_point(const LatticeSpec& spec, int m_max, int precision_bits,
                          int max_iter, const EnumConfig& cfg) {
  set_precision_bits(precision_bits);
  auto pi = pi_via_recursion(spec, m_max, cfg);
  std::vector<Int> hat(m_max + 1, Int(0));
  for (int m = 2; m <= m_max; ++m)
    for (auto& [x, v] : pi[m]) hat[m] += v;

  const long omega = static_cast<long>(step_set(spec).size());
  ZcEstimate out;
  Real eps = pow(Real(2), -(precision_bits - 4));

  // The truncated correction series alternates; when the plain truncation makes
  // the map unstable (small d, the cut tail is not small), averaging the last
  // two partial sums restores a usable map with the same convergence order.
  auto iterate = [&](bool tail_avg) -> bool {
    Real z = Real(1) / omega;
    out.converged = false;
    for (int it = 0; it < max_iter; ++it) {
      Real pihat(0), prev(0);
      Real zp = z * z;
      for (int m = 2; m <= m_max; ++m) {
        prev = pihat;
        pihat += Real(hat[m]) * zp;
        zp *= z;
      }
      if (tail_avg) pihat = (pihat + prev) / 2;
      Real next = (Real(1) - pihat) / omega;
      out.last_step = abs(next - z);
      out.iterations = it + 1;
      z = next;
      if (out.last_step < eps) {
        out.converged = true;
        break;
      }
      if (abs(z) > 1 || z < 0) return false;  // left (0,1): map unstable
    }
    out.zc = z;
    out.mu = Real(1) / z;
    return true;
  };

  if (!iterate(false)) {
    out.tail_averaged = true;
    if (!iterate(true))
      throw std::runtime_error(
          "fixed-point iteration left (0,1) even after tail averaging; "
          "truncation too short");
  }
  return out;
}

}  // namespace sawlab
