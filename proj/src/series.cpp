#include "sawlab/series.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sawlab {

namespace {

// endpoint tables as exact rationals for any lambda in [0,1]
std::vector<std::map<Coord, Rat>> endpoint_tables_rat(const LatticeSpec& spec,
                                                      const Rat& lambda, int n_max,
                                                      const EnumConfig& cfg) {
  auto counts = count_walks(spec, n_max, lambda, true, cfg);
  if (lambda == 1) {
    std::vector<std::map<Coord, Rat>> out(n_max + 1);
    for (int n = 0; n <= n_max; ++n)
      for (auto& [x, v] : counts.by_endpoint[n]) out[n][x] = Rat(v);
    return out;
  }
  return counts.by_endpoint_rat;
}

Coord negate(const Coord& x) {
  Coord y{};
  for (int i = 0; i < kMaxDim; ++i) y[i] = -x[i];
  return y;
}

Coord add(const Coord& x, const Coord& y) {
  Coord z{};
  for (int i = 0; i < kMaxDim; ++i) z[i] = x[i] + y[i];
  return z;
}

// r reduced into [0, 2)
Rat mod_two(const Rat& r) {
  Int num = numerator(r), den = denominator(r);
  Int period = 2 * den;
  Int m = num % period;
  if (m < 0) m += period;
  return Rat(m, den);
}

Rat dot(const std::vector<Rat>& k, const Coord& x) {
  Rat s(0);
  for (size_t j = 0; j < k.size(); ++j) s += k[j] * x[j];
  return s;
}

// geometric tail: sum_{n > N} |Omega| (|Omega|-1)^{n-1} z^n, z >= 0
Rat easy_bound_tail(long omega, const Rat& z, int N) {
  Rat B(omega - 1);
  Rat r = B * z;
  if (!(r < 1)) throw std::invalid_argument("z outside the geometric-tail guard");
  Rat zn(1);
  for (int i = 0; i <= N; ++i) zn *= z;  // z^{N+1}
  Rat BN(1);
  for (int i = 0; i < N; ++i) BN *= B;   // B^N
  return Rat(omega) * zn * BN / (1 - r);
}

}  // namespace

SeriesTrunc SeriesTrunc::operator+(const SeriesTrunc& o) const {
  int n = std::min(order(), o.order());
  SeriesTrunc r(n);
  for (int i = 0; i <= n; ++i) r.a[i] = a[i] + o.a[i];
  return r;
}

SeriesTrunc SeriesTrunc::operator-(const SeriesTrunc& o) const {
  int n = std::min(order(), o.order());
  SeriesTrunc r(n);
  for (int i = 0; i <= n; ++i) r.a[i] = a[i] - o.a[i];
  return r;
}

SeriesTrunc SeriesTrunc::operator*(const SeriesTrunc& o) const {
  int n = std::min(order(), o.order());
  SeriesTrunc r(n);
#pragma omp parallel for schedule(static) if (n > 64)
  for (int k = 0; k <= n; ++k) {
    Rat s(0);
    for (int i = std::max(0, k - o.order()); i <= std::min(k, order()); ++i)
      s += a[i] * o.a[k - i];
    r.a[k] = s;
  }
  return r;
}

SeriesTrunc SeriesTrunc::derivative() const {
  if (order() == 0) return SeriesTrunc(0);
  SeriesTrunc r(order() - 1);
  for (int i = 1; i <= order(); ++i) r.a[i - 1] = a[i] * i;
  return r;
}

SeriesTrunc SeriesTrunc::mul_z() const {
  SeriesTrunc r(order() + 1);
  for (int i = 0; i <= order(); ++i) r.a[i + 1] = a[i];
  return r;
}

SeriesTrunc SeriesTrunc::scaled_arg(const Rat& s) const {
  SeriesTrunc r(order());
  Rat p(1);
  for (int i = 0; i <= order(); ++i, p *= s) r.a[i] = a[i] * p;
  return r;
}

SeriesTrunc SeriesTrunc::truncated(int n_max) const {
  SeriesTrunc r(std::min(n_max, order()));
  for (int i = 0; i <= r.order(); ++i) r.a[i] = a[i];
  return r;
}

Rat SeriesTrunc::eval(const Rat& z) const {
  Rat s(0);
  for (int i = order(); i >= 0; --i) s = s * z + a[i];  // Horner
  return s;
}

std::string series_csv(const SeriesTrunc& f) {
  std::ostringstream os;
  os << "n,coefficient\n";
  for (int i = 0; i <= f.order(); ++i) os << i << "," << f.a[i] << "\n";
  return os.str();
}

SeriesTrunc susceptibility_series(const LatticeSpec& spec, const Rat& lambda,
                                  int n_max, const EnumConfig& cfg) {
  auto counts = count_walks(spec, n_max, lambda, false, cfg);
  SeriesTrunc chi(n_max);
  for (int n = 0; n <= n_max; ++n)
    chi.a[n] = counts.weighted ? counts.c_rat[n] : Rat(counts.c[n]);
  return chi;
}

SeriesTrunc bubble_series(const LatticeSpec& spec, int n_max,
                          const EnumConfig& cfg) {
  auto counts = count_walks(spec, n_max, Rat(1), true, cfg);
  SeriesTrunc b(n_max);
  for (int m = 0; m <= n_max; ++m) {
    Int s(0);
    for (int i = 0; i <= m; ++i) {
      const auto& small = counts.by_endpoint[std::min(i, m - i)];
      const auto& big = counts.by_endpoint[std::max(i, m - i)];
      for (auto& [x, v] : small) {
        auto it = big.find(x);
        if (it != big.end()) s += v * it->second;
      }
    }
    b.a[m] = Rat(s);
  }
  return b;
}

PiHatSeries pi_hat_series(const LatticeSpec& spec, int m_max,
                          const EnumConfig& cfg) {
  PiHatSeries out;
  auto rec = pi_via_recursion(spec, m_max, cfg);
  out.total = SeriesTrunc(m_max);
  for (int m = 2; m <= m_max; ++m) {
    Int s(0);
    for (auto& [x, v] : rec[m]) s += v;
    out.total.a[m] = Rat(s);
  }
  auto lace = pi_via_laces(spec, m_max, 2, cfg);
  auto h1 = lace.hat_by_n(1), h2 = lace.hat_by_n(2);
  out.n1 = SeriesTrunc(m_max);
  out.n2 = SeriesTrunc(m_max);
  for (int m = 0; m <= m_max; ++m) {
    out.n1.a[m] = Rat(h1[m]);
    out.n2.a[m] = Rat(h2[m]);
  }
  return out;
}

OdeCheckReport susceptibility_ode_check(const LatticeSpec& spec, int n_max,
                                        const EnumConfig& cfg) {
  OdeCheckReport rep;
  rep.n_max = n_max;
  SeriesTrunc chi = susceptibility_series(spec, Rat(1), n_max, cfg);

  auto rec = pi_via_recursion(spec, n_max, cfg);
  SeriesTrunc pihat(n_max);
  for (int m = 2; m <= n_max; ++m) {
    Int s(0);
    for (auto& [x, v] : rec[m]) s += v;
    pihat.a[m] = Rat(s);
  }

  SeriesTrunc one(n_max);
  one.a[0] = 1;
  SeriesTrunc V = one - pihat + pihat.derivative().mul_z();
  rep.lhs = chi.mul_z().derivative();
  rep.rhs = V * chi * chi;

  rep.exact = true;
  for (int i = 0; i <= n_max; ++i)
    if (rep.lhs.a[i] != rep.rhs.a[i]) {
      rep.exact = false;
      rep.first_mismatch = i;
      break;
    }
  return rep;
}

Rat rational_cos_pi(const Rat& r) {
  Rat m = mod_two(r);  // in [0, 2), cos(m pi) by quadrant table
  Int p = numerator(m), q = denominator(m);
  if (q == 1) return p == 0 ? Rat(1) : Rat(-1);
  if (q == 2) return Rat(0);  // p odd after reduction
  if (q == 3) {
    long pm = p.convert_to<long>() % 6;
    return (pm == 1 || pm == 5) ? Rat(1, 2) : Rat(-1, 2);
  }
  throw std::invalid_argument("cos(r pi) is not rational for this angle");
}

FourierEval fourier_two_point(const LatticeSpec& spec, const Rat& z,
                              const std::vector<Rat>& k, int n_max,
                              int precision_bits, const EnumConfig& cfg) {
  if (static_cast<int>(k.size()) != spec.d)
    throw std::invalid_argument("k must have one component per dimension");
  const long omega = static_cast<long>(step_set(spec).size());
  Rat az = z < 0 ? -z : z;
  FourierEval out;
  out.k = k;
  out.n_max = n_max;
  out.tail = easy_bound_tail(omega, az, n_max);  // throws outside the guard

  set_precision_bits(precision_bits);
  auto tables = count_walks(spec, n_max, Rat(1), true, cfg).by_endpoint;
  Real pi_r = real_pi();
  std::map<Rat, Real> cos_cache;
  auto cos_of = [&](const Rat& r) -> const Real& {
    Rat key = mod_two(r);
    auto it = cos_cache.find(key);
    if (it == cos_cache.end())
      it = cos_cache.emplace(key, cos(pi_r * rat_to_real(key))).first;
    return it->second;
  };

  Real zr = rat_to_real(z), zn(1), value(0);
  for (int n = 0; n <= n_max; ++n) {
    Real coeff(0);
    for (auto& [x, v] : tables[n]) coeff += Real(Int(v)) * cos_of(dot(k, x));
    value += coeff * zn;
    zn *= zr;
  }
  out.value = value;
  return out;
}

GhatFormulaReport ghat_formula_check(const LatticeSpec& spec,
                                     const std::vector<Rat>& k, int n_max,
                                     int m_max, const EnumConfig& cfg) {
  if (static_cast<int>(k.size()) != spec.d)
    throw std::invalid_argument("k must have one component per dimension");
  if (m_max < 2 || n_max < m_max)
    throw std::invalid_argument("need m_max >= 2 and n_max >= m_max");

  std::map<Rat, Rat> cos_cache;
  auto cos_of = [&](const Rat& r) -> const Rat& {
    Rat key = mod_two(r);
    auto it = cos_cache.find(key);
    if (it == cos_cache.end())
      it = cos_cache.emplace(key, rational_cos_pi(key)).first;
    return it->second;
  };

  auto tables = count_walks(spec, n_max, Rat(1), true, cfg).by_endpoint;
  std::vector<Rat> chat(n_max + 1, Rat(0));
  for (int n = 0; n <= n_max; ++n)
    for (auto& [x, v] : tables[n]) chat[n] += Rat(v) * cos_of(dot(k, x));

  auto rec = pi_via_recursion(spec, m_max, cfg);
  std::vector<Rat> pihat(m_max + 1, Rat(0));
  for (int m = 2; m <= m_max; ++m)
    for (auto& [x, v] : rec[m]) pihat[m] += Rat(v) * cos_of(dot(k, x));

  // R(z) = 1 - z chat_1 - sum_m pihat_m z^m, full product against G's partial sum
  std::vector<Rat> R(m_max + 1, Rat(0));
  R[0] = 1;
  R[1] = -chat[1];
  for (int m = 2; m <= m_max; ++m) R[m] -= pihat[m];

  GhatFormulaReport rep;
  rep.m_max = m_max;
  rep.product.assign(n_max + m_max + 1, Rat(0));
  for (int i = 0; i <= m_max; ++i)
    for (int j = 0; j <= n_max; ++j) rep.product[i + j] += R[i] * chat[j];

  rep.ok = rep.product[0] == 1;
  if (!rep.ok) rep.first_bad = 0;
  for (int t = 1; t <= m_max && rep.ok; ++t)
    if (rep.product[t] != 0) {
      rep.ok = false;
      rep.first_bad = t;
    }
  return rep;
}

SimonLiebReport simon_lieb_check(const LatticeSpec& spec, const Rat& lambda,
                                 const Coord& lo, const Coord& hi, int n_max,
                                 const EnumConfig& cfg) {
  for (int i = 0; i < spec.d; ++i)
    if (lo[i] > 0 || hi[i] < 0 || lo[i] > hi[i])
      throw std::invalid_argument("box must contain the origin");

  std::vector<Coord> D;
  Coord x = lo;
  while (true) {  // odometer over the box
    D.push_back(x);
    int i = 0;
    while (i < spec.d && ++x[i] > hi[i]) x[i++] = lo[i];
    if (i == spec.d) break;
  }
  auto in_box = [&](const Coord& y) {
    for (int i = 0; i < spec.d; ++i)
      if (y[i] < lo[i] || y[i] > hi[i]) return false;
    return true;
  };

  auto steps = step_set(spec);
  std::vector<Coord> boundary;
  {
    std::map<Coord, bool> seen;
    for (auto& v : D)
      for (auto& s : steps) {
        Coord u = add(v, s);
        if (!in_box(u) && !seen.count(u)) {
          seen[u] = true;
          boundary.push_back(u);
        }
      }
  }
  std::vector<Coord> Dbar = D;
  Dbar.insert(Dbar.end(), boundary.begin(), boundary.end());

  auto free_tab = endpoint_tables_rat(spec, lambda, n_max, cfg);
  auto in_D = count_restricted(spec, n_max, lambda, D, origin(), cfg);
  auto in_Dbar = count_restricted(spec, n_max, lambda, Dbar, origin(), cfg);

  SimonLiebReport rep;
  rep.n_max = n_max;
  rep.lhs = SeriesTrunc(n_max);
  rep.rhs = SeriesTrunc(n_max);
  auto at = [](const std::map<Coord, Rat>& t, const Coord& y) {
    auto it = t.find(y);
    return it == t.end() ? Rat(0) : it->second;
  };
  for (int n = 0; n <= n_max; ++n) {
    rep.lhs.a[n] = at(free_tab[n], origin()) - at(in_D.by_endpoint[n], origin());
    Rat s(0);
    for (auto& u : boundary)
      for (int i = 0; i <= n; ++i)
        s += at(in_Dbar.by_endpoint[i], u) * at(free_tab[n - i], negate(u));
    rep.rhs.a[n] = s;
  }

  rep.holds = true;
  for (int n = 0; n <= n_max; ++n)
    if (rep.rhs.a[n] - rep.lhs.a[n] < 0) {
      rep.holds = false;
      rep.first_violation = n;
      break;
    }
  return rep;
}

namespace {

// all step sequences on the torus (Z/side)^d with the weakly-SAW weight;
// occupancy bookkeeping identical to the free weighted kernel, coordinates
// reduced mod side
struct TorusWalker {
  int d, side, n;
  std::vector<Coord> steps;
  std::vector<int> occ;
  std::vector<Rat> pw;
  std::vector<Rat> sums;
  std::array<int, kMaxDim> pos{};

  void dfs(int depth, const Rat& w) {
    sums[depth] += w;
    if (depth == n) return;
    for (auto& s : steps) {
      auto save = pos;
      for (int a = 0; a < d; ++a) pos[a] = (pos[a] + s[a] % side + side) % side;
      long flat = 0;
      for (int a = d - 1; a >= 0; --a) flat = flat * side + pos[a];
      const Rat& factor = pw[occ[flat]];
      if (!(factor == 0)) {
        Rat nw = w * factor;
        ++occ[flat];
        dfs(depth + 1, nw);
        --occ[flat];
      }
      pos = save;
    }
  }
};

}  // namespace

TorusDominationReport torus_domination_check(const LatticeSpec& spec,
                                             const Rat& lambda, int R,
                                             int n_max, const EnumConfig& cfg) {
  if (R < 1) throw std::invalid_argument("torus needs side 2R+1 >= 3");
  if (lambda < 0 || lambda > 1) throw std::invalid_argument("lambda in [0,1]");
  TorusDominationReport rep;
  rep.n_max = n_max;
  rep.side = 2 * R + 1;

  TorusWalker w;
  w.d = spec.d;
  w.side = rep.side;
  w.n = n_max;
  w.steps = step_set(spec);
  w.occ.assign(static_cast<size_t>(std::pow(rep.side, spec.d)) + 1, 0);
  w.pw.resize(n_max + 2);
  w.pw[0] = 1;
  for (int i = 1; i <= n_max + 1; ++i) w.pw[i] = w.pw[i - 1] * (1 - lambda);
  w.sums.assign(n_max + 1, Rat(0));
  for (int a = 0; a < spec.d; ++a) w.pos[a] = 0;
  w.occ[0] = 1;
  w.dfs(0, Rat(1));

  rep.torus = SeriesTrunc(n_max);
  for (int n = 0; n <= n_max; ++n) rep.torus.a[n] = w.sums[n];
  rep.full = susceptibility_series(spec, lambda, n_max, cfg);

  rep.holds = true;
  for (int n = 0; n <= n_max; ++n)
    if (rep.torus.a[n] > rep.full.a[n]) rep.holds = false;
  return rep;
}

DiagBoundReport diagrammatic_bound_check(const LatticeSpec& spec, const Rat& z,
                                         int m_max, const EnumConfig& cfg) {
  const long omega = static_cast<long>(step_set(spec).size());
  if (z < 0 || !(Rat(omega) * z < 1))
    throw std::invalid_argument("need 0 <= z and |Omega| z < 1");

  DiagBoundReport rep;
  rep.z = z;
  rep.m_max = m_max;

  auto lace = pi_via_laces(spec, m_max, 2, cfg);
  auto h1 = lace.hat_by_n(1), h2 = lace.hat_by_n(2);
  std::vector<Rat> zpow(2 * m_max + 2, Rat(1));
  for (size_t i = 1; i < zpow.size(); ++i) zpow[i] = zpow[i - 1] * z;

  rep.lhs1_partial = 0;
  rep.lhs2_partial = 0;
  for (int m = 2; m <= m_max; ++m) {
    rep.lhs1_partial += Rat(h1[m]) * zpow[m];
    rep.lhs2_partial += Rat(h2[m]) * zpow[m];
  }

  // tails: the one-edge coefficient is a self-avoiding return count, at most
  // c_{m-1} <= |Omega| B^{m-2}; the two-edge coefficient counts (walk, lace)
  // pairs, at most binom(m-1, 2) |Omega|^m
  Rat B(omega - 1);
  if (m_max >= 1) {
    Rat r = B * z;
    rep.lhs1_tail = Rat(omega) * zpow[2] * [&] {
      Rat p(1);
      for (int i = 0; i < m_max - 1; ++i) p *= r;
      return p;
    }() / (1 - r);
  }
  {
    Rat r = Rat(omega) * z;
    Rat full = r * r / ((1 - r) * (1 - r) * (1 - r));  // (1/2) sum m(m-1) r^m
    Rat partial(0);
    Rat rm(1);
    for (int m = 0; m <= m_max; ++m, rm *= r)
      partial += Rat(m * (m - 1)) / 2 * rm;
    rep.lhs2_tail = full - partial;
  }

  // H and G*H partial sums from the exact tables, one order past the lhs
  // truncation (the lhs consumes walk counts only through length m_max - 1,
  // so the right side genuinely sees more of the series)
  const int n_tab = m_max + 1;
  auto tables = count_walks(spec, n_tab, Rat(1), true, cfg).by_endpoint;
  std::map<Coord, Rat> H;
  for (int n = 1; n <= n_tab; ++n)
    for (auto& [x, v] : tables[n]) H[x] += Rat(v) * zpow[n];
  Rat maxH(0);
  for (auto& [x, v] : H) maxH = std::max(maxH, v);
  rep.rhs1_partial = z * Rat(omega) * maxH;
  rep.margin1 = rep.rhs1_partial - rep.lhs1_partial;
  rep.n1_holds = rep.margin1 >= 0;
  rep.n1_certified = rep.margin1 >= rep.lhs1_tail;

  std::map<Coord, Rat> GH;
  for (int i = 0; i <= n_tab; ++i)
    for (int j = 1; i + j <= n_tab; ++j)
      for (auto& [y, cy] : tables[i])
        for (auto& [u, cu] : tables[j]) GH[add(y, u)] += Rat(cy * cu) * zpow[i + j];
  Rat maxGH(0);
  for (auto& [x, v] : GH) maxGH = std::max(maxGH, v);
  rep.rhs2_partial = maxH * maxGH;
  rep.margin2 = rep.rhs2_partial - rep.lhs2_partial;
  rep.n2_holds = rep.margin2 >= 0;
  rep.n2_certified = rep.margin2 >= rep.lhs2_tail;

  // sum_x (1 - cos k.x) Pi^{(1)}(x) with k = (pi/3) e1: the one-edge table is
  // supported at the origin, so this must vanish identically
  std::vector<Rat> k(spec.d, Rat(0));
  k[0] = Rat(1, 3);
  rep.cosine_identity = 0;
  for (int m = 2; m <= m_max; ++m)
    for (auto& [x, v] : lace.by_n[1][m])
      rep.cosine_identity += (1 - rational_cos_pi(dot(k, x))) * Rat(v) * zpow[m];
  return rep;
}

}  // namespace sawlab
