#include "sawlab/hexobs.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace sawlab::hex {

namespace {

struct Walker {
  const HexDomain& dom;
  std::uint64_t budget = 0, nodes = 0;
  std::map<MidEdge, TurnHist> out;
  std::set<Vtx> visited;

  void go(const MidEdge& e, const Vtx& head, int ell, int turns) {
    out[e][{ell, turns}] += 1;
    if (budget && ++nodes > budget) throw BudgetExceeded();
    if (!dom.contains(head) || visited.count(head)) return;
    auto inc = incident_edges(head);
    int de = -1;
    for (const auto& i : inc)
      if (i.e == e) de = i.dir;
    visited.insert(head);
    for (const auto& i : inc) {
      if (i.dir == de) continue;
      int turn = ((i.dir - de) % 6 + 6) % 6 - 3;  // always +-1 on a honeycomb
      auto ends = edge_ends(i.e);
      Vtx next = ends[0] == head ? ends[1] : ends[0];
      go(i.e, next, ell + 1, turns + turn);
    }
    visited.erase(head);
  }
};

// unit vectors for the six direction indices, exact negation symmetry
std::array<Cplx, 6> direction_units() {
  Real half = Real(1) / 2, s = sqrt(Real(3)) / 2;
  return {Cplx{Real(1), Real(0)}, Cplx{half, s},    Cplx{-half, s},
          Cplx{Real(-1), Real(0)}, Cplx{-half, -s}, Cplx{half, -s}};
}

}  // namespace

HexField enumerate_field(const HexDomain& dom, const MidEdge& a,
                         std::uint64_t node_budget) {
  auto ends = edge_ends(a);
  bool in0 = dom.contains(ends[0]), in1 = dom.contains(ends[1]);
  if (in0 == in1)
    throw std::invalid_argument(
        "start mid-edge must have exactly one endpoint in the domain");
  Walker w{dom};
  w.budget = node_budget;
  w.go(a, in0 ? ends[0] : ends[1], 0, 0);
  HexField field;
  field.a = a;
  field.walks = std::move(w.out);
  return field;
}

Cplx HexField::eval(const MidEdge& x, const Real& z, const Rat& sigma) const {
  auto it = walks.find(x);
  Cplx acc;
  if (it == walks.end()) return acc;
  long num = static_cast<long>(numerator(sigma));
  long den = static_cast<long>(denominator(sigma));
  for (const auto& [key, count] : it->second) {
    Real zl = pow(z, key.first);
    acc += unit_from_pi_fraction(-num * key.second, 3 * den) *
           (zl * Real(count));
  }
  return acc;
}

Real HexField::unsigned_sum(const MidEdge& x, const Real& z) const {
  auto it = walks.find(x);
  Real acc(0);
  if (it == walks.end()) return acc;
  for (const auto& [key, count] : it->second)
    acc += pow(z, key.first) * Real(count);
  return acc;
}

std::map<MidEdge, ObservableValue> observable(const HexDomain& dom,
                                              const MidEdge& a, const Real& z,
                                              const Rat& sigma,
                                              std::uint64_t node_budget) {
  auto field = enumerate_field(dom, a, node_budget);
  std::map<MidEdge, ObservableValue> out;
  for (const auto& [e, hist] : field.walks) {
    ObservableValue v;
    v.x = e;
    v.value = field.eval(e, z, sigma);
    v.unsigned_bound = field.unsigned_sum(e, z);
    out[e] = v;
  }
  return out;
}

Real critical_z() {
  Real two(2);
  return 1 / sqrt(two + sqrt(two));
}

Real vertex_identity_residual(const HexDomain& dom, const MidEdge& a,
                              const Real& z, const Rat& sigma,
                              std::uint64_t node_budget) {
  auto field = enumerate_field(dom, a, node_budget);
  auto dirs = direction_units();
  Real worst(0);
  for (const auto& v : dom.v) {
    Cplx acc;
    for (const auto& inc : incident_edges(v))
      acc += dirs[inc.dir] * field.eval(inc.e, z, sigma);
    worst = std::max(worst, acc.abs());
  }
  return worst;
}

Real vertex_identity_check(const HexDomain& dom, const MidEdge& a,
                           int precision_bits, std::uint64_t node_budget) {
  set_precision_bits(precision_bits);
  return vertex_identity_residual(dom, a, critical_z(), Rat(5, 8), node_budget);
}

Real boundary_telescope_check(const HexDomain& dom, const MidEdge& a,
                              int precision_bits, std::uint64_t node_budget) {
  set_precision_bits(precision_bits);
  auto field = enumerate_field(dom, a, node_budget);
  Real zc = critical_z();
  Rat sigma(5, 8);
  auto dirs = direction_units();
  Cplx acc;
  for (const auto& v : dom.v)
    for (const auto& inc : incident_edges(v)) {
      auto ends = edge_ends(inc.e);
      Vtx w = ends[0] == v ? ends[1] : ends[0];
      if (!dom.contains(w)) acc += dirs[inc.dir] * field.eval(inc.e, zc, sigma);
    }
  return acc.abs();
}

StripSums strip_sums(int T, int L, const Real& z, std::uint64_t node_budget) {
  auto sb = strip_boundary(T, L);
  auto field = enumerate_field(strip_domain(T, L), sb.a, node_budget);
  StripSums out;
  out.T = T;
  out.L = L;
  out.A = 0;
  out.B = 0;
  out.E = 0;
  for (const auto& e : sb.alpha)
    if (!(e == sb.a)) out.A += field.unsigned_sum(e, z);
  for (const auto& e : sb.beta) out.B += field.unsigned_sum(e, z);
  for (const auto& e : sb.eps) out.E += field.unsigned_sum(e, z);
  for (const auto& e : sb.eps_bar) out.E += field.unsigned_sum(e, z);
  return out;
}

namespace {

bool family_windings(const HexField& field, const std::vector<MidEdge>& fam,
                     const MidEdge* skip, const std::function<bool(int)>& ok) {
  for (const auto& e : fam) {
    if (skip && e == *skip) continue;
    auto it = field.walks.find(e);
    if (it == field.walks.end()) continue;
    for (const auto& [key, count] : it->second)
      if (!ok(key.second)) return false;
  }
  return true;
}

}  // namespace

StripIdentityReport strip_identity_check(int T, int L, int precision_bits,
                                         std::uint64_t node_budget) {
  set_precision_bits(precision_bits);
  auto sb = strip_boundary(T, L);
  auto field = enumerate_field(strip_domain(T, L), sb.a, node_budget);
  Real zc = critical_z();

  StripIdentityReport rep;
  rep.T = T;
  rep.L = L;
  rep.A = 0;
  rep.B = 0;
  rep.E = 0;
  for (const auto& e : sb.alpha)
    if (!(e == sb.a)) rep.A += field.unsigned_sum(e, zc);
  for (const auto& e : sb.beta) rep.B += field.unsigned_sum(e, zc);
  for (const auto& e : sb.eps) rep.E += field.unsigned_sum(e, zc);
  for (const auto& e : sb.eps_bar) rep.E += field.unsigned_sum(e, zc);

  rep.windings_ok =
      family_windings(field, sb.beta, nullptr, [](int t) { return t == 0; }) &&
      family_windings(field, sb.eps, nullptr, [](int t) { return t == 2; }) &&
      family_windings(field, sb.eps_bar, nullptr,
                      [](int t) { return t == -2; }) &&
      family_windings(field, sb.alpha, &sb.a,
                      [](int t) { return t == 3 || t == -3; });

  Real pi = real_pi();
  Real c_alpha = cos(3 * pi / 8), c_eps = cos(pi / 4);
  rep.residual = abs(c_alpha * rep.A + rep.B + c_eps * rep.E - 1);
  return rep;
}

RecursionReport strip_recursion_check(int T_max, int L,
                                      std::uint64_t node_budget) {
  if (T_max < 2) throw std::invalid_argument("need T_max >= 2");
  set_precision_bits(106);
  Real zc = critical_z();
  Real pi = real_pi();
  Real c_alpha = cos(3 * pi / 8), c_eps = cos(pi / 4);

  std::vector<StripSums> sums;
  for (int T = 1; T <= T_max; ++T)
    sums.push_back(strip_sums(T, L, zc, node_budget));

  RecursionReport rep;
  rep.T_max = T_max;
  rep.L = L;
  for (int T = 1; T < T_max; ++T) {
    const auto& lo = sums[T - 1];
    const auto& hi = sums[T];
    RecursionStep st;
    st.T = T;
    // A* in [A_L, A_L + c_eps E_L / c_alpha], B* in [B_L, B_L + c_eps E_L]
    st.lhs_upper = hi.A + c_eps * hi.E / c_alpha - lo.A;
    st.lhs_lower = hi.A - (lo.A + c_eps * lo.E / c_alpha);
    st.rhs_lower = zc * hi.B * hi.B;
    Real b_up = hi.B + c_eps * hi.E;
    st.rhs_upper = zc * b_up * b_up;
    if (st.lhs_upper <= st.rhs_lower)
      st.status = RecursionStatus::holds;
    else if (st.lhs_lower > st.rhs_upper)
      st.status = RecursionStatus::violated;
    else
      st.status = RecursionStatus::inconclusive;
    rep.any_violated =
        rep.any_violated || st.status == RecursionStatus::violated;
    rep.steps.push_back(st);
  }
  return rep;
}

}  // namespace sawlab::hex
