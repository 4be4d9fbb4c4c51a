#include "sawlab/walks.hpp"

#include <atomic>
#include <cstring>
#include <functional>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sawlab {
namespace {

// ---------------------------------------------------------------------------
// geometry helpers: positions are flat indices into a box [-R, R]^d

struct Box {
  int d;
  long R;      // coordinate bound
  long side;   // 2R+1
  std::array<long, kMaxDim> stride{};
  long cells;

  Box(int d_, long R_) : d(d_), R(R_), side(2 * R_ + 1) {
    long s = 1;
    for (int i = 0; i < d; ++i) {
      stride[i] = s;
      s *= side;
    }
    cells = s;
  }
  long index(const Coord& c) const {
    long idx = 0;
    for (int i = 0; i < d; ++i) idx += (c[i] + R) * stride[i];
    return idx;
  }
  Coord coord(long idx) const {
    Coord c{};
    for (int i = 0; i < d; ++i) {
      c[i] = static_cast<int>(idx % side - R);
      idx /= side;
    }
    return c;
  }
};

struct BitSet {
  std::vector<std::uint64_t> w;
  explicit BitSet(long bits) : w((bits + 63) / 64, 0) {}
  bool test(long i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  void set(long i) { w[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void clear(long i) { w[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
};

// ---------------------------------------------------------------------------
// self-avoiding enumeration kernel (lambda = 1)

enum class Mode { Free, HalfSpace };

struct Shared {
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::uint64_t budget = 0;

  // batched budget accounting; returns false when enumeration must halt
  bool charge(std::uint64_t k) {
    if (stop.load(std::memory_order_relaxed)) return false;
    std::uint64_t total = nodes.fetch_add(k, std::memory_order_relaxed) + k;
    if (budget && total > budget) {
      stop.store(true, std::memory_order_relaxed);
      return false;
    }
    return true;
  }
};

// per-task exact tallies in 64-bit with checked overflow; `overflow` tells the
// caller to redo the task with big-integer tallies
struct TallyU64 {
  std::vector<std::uint64_t> c;     // walks per length
  std::vector<std::uint64_t> b;     // bridge walks per length
  std::vector<std::uint64_t> span;  // bridge span histogram, (n+1) x (n+1)
  std::vector<std::uint64_t> ends;  // endpoint tables, (n+1) x cells
  bool overflow = false;

  static bool add1(std::uint64_t& slot) {
    return !__builtin_add_overflow(slot, std::uint64_t(1), &slot);
  }
};

struct TallyInt {
  std::vector<Int> c, b;
  std::vector<std::map<int, Int>> span;       // per length
  std::vector<std::map<long, Int>> ends;      // per length, box index -> count
};

struct SawKernel {
  const int d, n;
  const Mode mode;
  const bool want_ends;
  Box box;
  std::vector<Coord> steps;
  std::vector<long> delta;
  Shared& shared;

  SawKernel(const LatticeSpec& spec, int n_, Mode m, bool ends, Shared& sh)
      : d(spec.d), n(n_), mode(m), want_ends(ends),
        box(spec.d, std::max<long>(1, long(n_) * spec.range)),
        steps(step_set(spec)), shared(sh) {
    for (const auto& s : steps) {
      long dl = 0;
      for (int i = 0; i < d; ++i) dl += long(s[i]) * box.stride[i];
      delta.push_back(dl);
    }
  }

  struct State {
    BitSet visited;
    Coord pos{};
    long idx;
    std::uint64_t pending = 0;  // nodes not yet charged to the shared counter
    explicit State(const Box& b) : visited(b.cells), idx(b.index(Coord{})) {
      visited.set(idx);
    }
    bool charge(Shared& sh) {
      if (++pending < 4096) return true;
      bool ok = sh.charge(pending);
      pending = 0;
      return ok;
    }
  };

  template <class Tally>
  void record(Tally& t, int depth, const State& st, int maxx1) {
    if constexpr (std::is_same_v<Tally, TallyU64>) {
      if (!TallyU64::add1(t.c[depth])) t.overflow = true;
      if (mode == Mode::HalfSpace && st.pos[0] == maxx1) {
        if (!TallyU64::add1(t.b[depth])) t.overflow = true;
        if (!TallyU64::add1(t.span[depth * (n + 1) + st.pos[0]])) t.overflow = true;
      }
      if (want_ends && !TallyU64::add1(t.ends[depth * box.cells + st.idx]))
        t.overflow = true;
    } else {
      t.c[depth] += 1;
      if (mode == Mode::HalfSpace && st.pos[0] == maxx1) {
        t.b[depth] += 1;
        t.span[depth][st.pos[0]] += 1;
      }
      if (want_ends) t.ends[depth][st.idx] += 1;
    }
  }

  // depth-first over self-avoiding extensions; the node at `depth` has
  // already been recorded by the caller
  template <class Tally>
  void dfs(State& st, int depth, int maxx1, Tally& t) {
    if (depth == n) return;
    for (size_t si = 0; si < steps.size(); ++si) {
      int nx1 = st.pos[0] + steps[si][0];
      if (mode == Mode::HalfSpace && nx1 < 1) continue;
      long nidx = st.idx + delta[si];
      if (st.visited.test(nidx)) continue;
      if (!st.charge(shared)) return;
      Coord save = st.pos;
      long sidx = st.idx;
      for (int i = 0; i < d; ++i) st.pos[i] += steps[si][i];
      st.idx = nidx;
      st.visited.set(nidx);
      record(t, depth + 1, st, std::max(maxx1, nx1));
      dfs(st, depth + 1, std::max(maxx1, nx1), t);
      st.visited.clear(nidx);
      st.pos = save;
      st.idx = sidx;
    }
  }

  // enumerate prefixes to `split`: record shallow walks, collect step-index
  // sequences of the nodes whose subtrees become parallel tasks
  void prefixes(State& st, int depth, int maxx1, TallyInt& t,
                std::vector<int>& stack, std::vector<std::vector<int>>& tasks,
                int split) {
    if (depth == n) return;
    if (depth == split) {
      tasks.push_back(stack);
      return;
    }
    for (size_t si = 0; si < steps.size(); ++si) {
      int nx1 = st.pos[0] + steps[si][0];
      if (mode == Mode::HalfSpace && nx1 < 1) continue;
      long nidx = st.idx + delta[si];
      if (st.visited.test(nidx)) continue;
      if (!st.charge(shared)) return;
      Coord save = st.pos;
      long sidx = st.idx;
      for (int i = 0; i < d; ++i) st.pos[i] += steps[si][i];
      st.idx = nidx;
      st.visited.set(nidx);
      record(t, depth + 1, st, std::max(maxx1, nx1));
      stack.push_back(static_cast<int>(si));
      prefixes(st, depth + 1, std::max(maxx1, nx1), t, stack, tasks, split);
      stack.pop_back();
      st.visited.clear(nidx);
      st.pos = save;
      st.idx = sidx;
    }
  }

  // rebuild the state at the end of a recorded prefix
  std::pair<State, int> replay(const std::vector<int>& stack) {
    State st(box);
    int maxx1 = 0;
    for (int si : stack) {
      for (int i = 0; i < d; ++i) st.pos[i] += steps[si][i];
      st.idx += delta[si];
      st.visited.set(st.idx);
      maxx1 = std::max(maxx1, st.pos[0]);
    }
    return {std::move(st), maxx1};
  }
};

struct SawResult {
  std::vector<Int> c, b;
  std::vector<std::map<int, Int>> span;
  std::vector<EndpointTable> ends;
};

void merge_u64(const SawKernel& k, const TallyU64& t, TallyInt& g) {
  for (int j = 0; j <= k.n; ++j) {
    if (t.c[j]) g.c[j] += t.c[j];
    if (!t.b.empty() && t.b[j]) g.b[j] += t.b[j];
  }
  if (!t.span.empty())
    for (int j = 0; j <= k.n; ++j)
      for (int a = 0; a <= k.n; ++a)
        if (auto v = t.span[j * (k.n + 1) + a]) g.span[j][a] += v;
  if (!t.ends.empty())
    for (int j = 0; j <= k.n; ++j)
      for (long i = 0; i < k.box.cells; ++i)
        if (auto v = t.ends[j * k.box.cells + i]) g.ends[j][i] += v;
}

void merge_int(const SawKernel& k, const TallyInt& t, TallyInt& g) {
  for (int j = 0; j <= k.n; ++j) {
    g.c[j] += t.c[j];
    if (!t.b.empty()) g.b[j] += t.b[j];
  }
  for (int j = 0; j < static_cast<int>(t.span.size()); ++j)
    for (auto& [a, v] : t.span[j]) g.span[j][a] += v;
  for (int j = 0; j < static_cast<int>(t.ends.size()); ++j)
    for (auto& [i, v] : t.ends[j]) g.ends[j][i] += v;
}

TallyInt fresh_int_tally(const SawKernel& k) {
  TallyInt t;
  t.c.assign(k.n + 1, Int(0));
  t.b.assign(k.n + 1, Int(0));
  t.span.resize(k.n + 1);
  t.ends.resize(k.n + 1);
  return t;
}

SawResult run_saw(const LatticeSpec& spec, int n, Mode mode, bool want_ends,
                  const EnumConfig& cfg) {
  Shared shared;
  shared.budget = cfg.node_budget;
  SawKernel k(spec, n, mode, want_ends, shared);

  TallyInt global = fresh_int_tally(k);
  global.c[0] = 1;  // the empty walk
  if (mode == Mode::HalfSpace) {
    global.b[0] = 1;
    global.span[0][0] = 1;
  }
  if (want_ends) global.ends[0][k.box.index(Coord{})] = 1;

  std::vector<std::vector<int>> tasks;
  {
    SawKernel::State st(k.box);
    std::vector<int> stack;
    int split = std::max(1, cfg.split_depth);
    k.prefixes(st, 0, 0, global, stack, tasks, std::min(split, n));
  }

  int nthreads = 1;
#ifdef _OPENMP
  nthreads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#endif

  auto run_task = [&](const std::vector<int>& pre, TallyInt& sink) {
    auto [st, maxx1] = k.replay(pre);
    TallyU64 t;
    t.c.assign(n + 1, 0);
    if (mode == Mode::HalfSpace) {
      t.b.assign(n + 1, 0);
      t.span.assign(size_t(n + 1) * (n + 1), 0);
    }
    if (want_ends) t.ends.assign(size_t(n + 1) * k.box.cells, 0);
    k.dfs(st, static_cast<int>(pre.size()), maxx1, t);
    if (t.overflow) {
      // redo with arbitrary-precision tallies
      auto [st2, mx2] = k.replay(pre);
      TallyInt big = fresh_int_tally(k);
      k.dfs(st2, static_cast<int>(pre.size()), mx2, big);
      merge_int(k, big, sink);
    } else {
      TallyInt tmp = fresh_int_tally(k);
      merge_u64(k, t, tmp);
      merge_int(k, tmp, sink);
    }
  };

#ifdef _OPENMP
#pragma omp parallel num_threads(nthreads)
  {
    TallyInt local = fresh_int_tally(k);
#pragma omp for schedule(dynamic, 1)
    for (long ti = 0; ti < static_cast<long>(tasks.size()); ++ti)
      run_task(tasks[ti], local);
#pragma omp critical(sawlab_merge)
    merge_int(k, local, global);
  }
#else
  for (const auto& t : tasks) run_task(t, global);
#endif

  if (shared.stop.load()) throw BudgetExceeded();

  SawResult res;
  res.c = std::move(global.c);
  res.b = std::move(global.b);
  res.span = std::move(global.span);
  if (want_ends) {
    res.ends.resize(n + 1);
    for (int j = 0; j <= n; ++j)
      for (auto& [idx, v] : global.ends[j]) res.ends[j][k.box.coord(idx)] = v;
  }
  return res;
}

// ---------------------------------------------------------------------------
// weighted ensemble kernel (all walks, weight prod_{s<t} (1 + lambda U_st));
// serial and exact-rational, intended for small n

struct WeightedKernel {
  int d, n;
  Box box;
  std::vector<Coord> steps;
  std::vector<long> delta;
  std::vector<Rat> pw;      // (1-lambda)^k
  std::vector<int> visits;  // occupancy per box cell
  const BitSet* domain;     // optional site restriction
  Shared& shared;
  std::vector<std::map<long, Rat>> table;  // per length, cell -> weight sum
  std::uint64_t pending = 0;

  WeightedKernel(const LatticeSpec& spec, int n_, const Rat& lambda, Box bx,
                 const BitSet* dom, Shared& sh)
      : d(spec.d), n(n_), box(bx), steps(step_set(spec)), domain(dom), shared(sh) {
    for (const auto& s : steps) {
      long dl = 0;
      for (int i = 0; i < d; ++i) dl += long(s[i]) * box.stride[i];
      delta.push_back(dl);
    }
    Rat q = Rat(1) - lambda;
    pw.resize(n + 2);
    pw[0] = 1;
    for (int i = 1; i <= n + 1; ++i) pw[i] = pw[i - 1] * q;
    visits.assign(box.cells, 0);
    table.resize(n + 1);
  }

  void dfs(int depth, long idx, const Rat& w) {
    table[depth][idx] += w;
    if (depth == n) return;
    if (++pending >= 4096) {
      if (!shared.charge(pending)) return;
      pending = 0;
    }
    for (size_t si = 0; si < steps.size(); ++si) {
      long nidx = idx + delta[si];
      if (domain && !domain->test(nidx)) continue;
      Rat nw = w * pw[visits[nidx]];
      if (nw == 0) continue;  // all deeper weights stay zero
      ++visits[nidx];
      dfs(depth + 1, nidx, nw);
      --visits[nidx];
    }
  }
};

}  // namespace

// ---------------------------------------------------------------------------

WalkCounts count_walks(const LatticeSpec& spec, int n, const Rat& lambda,
                       bool with_endpoints, const EnumConfig& cfg) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  if (lambda < 0 || lambda > 1)
    throw std::invalid_argument("lambda must be a rational in [0,1]");

  WalkCounts out;
  if (lambda == 1) {
    auto res = run_saw(spec, n, Mode::Free, with_endpoints, cfg);
    out.c = std::move(res.c);
    if (with_endpoints) out.by_endpoint = std::move(res.ends);
    return out;
  }

  out.weighted = true;
  Shared shared;
  shared.budget = cfg.node_budget;
  Box box(spec.d, std::max<long>(1, long(n) * spec.range));
  WeightedKernel wk(spec, n, lambda, box, nullptr, shared);
  ++wk.visits[box.index(Coord{})];
  wk.dfs(0, box.index(Coord{}), Rat(1));
  if (shared.stop.load()) throw BudgetExceeded();
  out.c_rat.assign(n + 1, Rat(0));
  if (with_endpoints) out.by_endpoint_rat.resize(n + 1);
  for (int j = 0; j <= n; ++j)
    for (auto& [idx, w] : wk.table[j]) {
      out.c_rat[j] += w;
      if (with_endpoints) out.by_endpoint_rat[j][box.coord(idx)] = w;
    }
  return out;
}

BridgeCounts count_bridges(const LatticeSpec& spec, int n, bool with_endpoints,
                           const EnumConfig& cfg) {
  auto res = run_saw(spec, n, Mode::HalfSpace, with_endpoints, cfg);
  BridgeCounts out;
  out.b = std::move(res.b);
  out.by_span = std::move(res.span);
  if (with_endpoints) out.by_endpoint = std::move(res.ends);
  return out;
}

std::vector<Int> count_half_space(const LatticeSpec& spec, int n, const EnumConfig& cfg) {
  auto res = run_saw(spec, n, Mode::HalfSpace, false, cfg);
  return res.c;
}

Int count_returns(const LatticeSpec& spec, int m, const EnumConfig& cfg) {
  if (m < 1) return 0;
  auto counts = count_walks(spec, m - 1, Rat(1), true, cfg);
  Int total = 0;
  for (const auto& s : step_set(spec)) {
    auto it = counts.by_endpoint[m - 1].find(s);
    if (it != counts.by_endpoint[m - 1].end()) total += it->second;
  }
  return total;
}

Int count_polygons(const LatticeSpec& spec, int two_n, const EnumConfig& cfg) {
  if (two_n == 2) return 1;  // the doubled single edge, by convention
  if (two_n < 2 || two_n % 2 != 0)
    throw std::invalid_argument("polygon length must be an even integer >= 2");
  Int returns = count_returns(spec, two_n, cfg);
  Int denom = 2 * two_n;
  if (returns % denom != 0)
    throw std::logic_error("polygon count is not an integer: returns(" +
                           std::to_string(two_n) + ") not divisible by 2*" +
                           std::to_string(two_n));
  return returns / denom;
}

RatTable count_restricted(const LatticeSpec& spec, int n, const Rat& lambda,
                          const std::vector<Coord>& domain, const Coord& from,
                          const EnumConfig& cfg) {
  if (lambda < 0 || lambda > 1)
    throw std::invalid_argument("lambda must be a rational in [0,1]");
  long R = 1;
  for (const auto& s : domain)
    for (int i = 0; i < spec.d; ++i) R = std::max<long>(R, std::abs(s[i]));
  for (int i = 0; i < spec.d; ++i) R = std::max<long>(R, std::abs(from[i]));
  // halo ring so neighbour index arithmetic from any domain cell stays inside
  // the box instead of wrapping to the next row
  Box box(spec.d, R + spec.range);
  BitSet dom(box.cells);
  bool contains_from = false;
  for (const auto& s : domain) {
    dom.set(box.index(s));
    contains_from = contains_from || s == from;
  }
  if (!contains_from) throw std::invalid_argument("domain must contain the start site");

  Shared shared;
  shared.budget = cfg.node_budget;
  WeightedKernel wk(spec, n, lambda, box, &dom, shared);
  ++wk.visits[box.index(from)];
  wk.dfs(0, box.index(from), Rat(1));
  if (shared.stop.load()) throw BudgetExceeded();

  RatTable out;
  out.by_endpoint.resize(n + 1);
  for (int j = 0; j <= n; ++j)
    for (auto& [idx, w] : wk.table[j]) out.by_endpoint[j][box.coord(idx)] = w;
  return out;
}

void for_each_walk(const LatticeSpec& spec, int n, WalkVisitor& v) {
  auto steps = step_set(spec);
  Coord pos{};
  std::function<void(int)> rec = [&](int depth) {
    if (depth == n) return;
    for (const auto& s : steps) {
      for (int i = 0; i < spec.d; ++i) pos[i] += s[i];
      if (v.enter(depth + 1, pos)) rec(depth + 1);
      v.leave(depth + 1);
      for (int i = 0; i < spec.d; ++i) pos[i] -= s[i];
    }
  };
  rec(0);
}

namespace {
void list_walks(const LatticeSpec& spec, int n, bool half_space,
                std::vector<std::vector<Coord>>& out) {
  auto steps = step_set(spec);
  Box box(spec.d, std::max<long>(1, n));
  BitSet visited(box.cells);
  std::vector<Coord> walk{Coord{}};
  visited.set(box.index(Coord{}));
  std::function<void()> rec = [&] {
    if (static_cast<int>(walk.size()) == n + 1) {
      out.push_back(walk);
      return;
    }
    for (const auto& s : steps) {
      Coord q = walk.back();
      for (int i = 0; i < spec.d; ++i) q[i] += s[i];
      if (half_space && q[0] < 1) continue;
      long idx = box.index(q);
      if (visited.test(idx)) continue;
      visited.set(idx);
      walk.push_back(q);
      rec();
      walk.pop_back();
      visited.clear(idx);
    }
  };
  rec();
}
}  // namespace

std::vector<std::vector<Coord>> list_half_space_walks(const LatticeSpec& spec, int n) {
  std::vector<std::vector<Coord>> out;
  list_walks(spec, n, true, out);
  return out;
}

std::vector<std::vector<Coord>> list_saws(const LatticeSpec& spec, int n) {
  std::vector<std::vector<Coord>> out;
  list_walks(spec, n, false, out);
  return out;
}

}  // namespace sawlab
