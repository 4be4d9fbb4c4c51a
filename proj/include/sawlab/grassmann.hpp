#pragma once
// Boson-fermion Gaussian integrals over a finite index set, evaluated
// algebraically.  Forms live in the algebra generated by commuting symbols
// phi_x, phibar_x and anticommuting generators psi_x, psibar_x, x < M.  The
// superexpectation of a form F is the normalised Gaussian integral with
// covariance C = A^{-1}: the fermion factor e^{-psi A psibar} is expanded
// exactly (it is nilpotent), the coefficient of the full volume monomial
// psi_0 psibar_0 ... is extracted, the leftover boson monomials are reduced
// by Wick's rule (permanents in C), and the result is divided by
// (-1)^M det A so that the empty form integrates to 1.
//
// Everything here is a pure function of its arguments; term counts at M <= 7
// are small enough that no sharing or caching is worth the coupling.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sawlab/arith.hpp"

namespace sawlab::gr {

// dense complex matrix, row major
struct CMat {
  int n = 0;
  std::vector<Cplx> a;
  CMat() = default;
  explicit CMat(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_) {}
  Cplx& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const Cplx& at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * n + j];
  }
};

inline CMat identity(int n) {
  CMat m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Cplx(1);
  return m;
}

namespace detail {

struct Lu {
  CMat lu;
  int sign = 1;
  bool singular = false;
};

inline Lu lu_decompose(CMat m) {
  Lu r{std::move(m), 1, false};
  int n = r.lu.n;
  for (int c = 0; c < n; ++c) {
    int p = c;
    Real best = r.lu.at(c, c).abs();
    for (int i = c + 1; i < n; ++i) {
      Real v = r.lu.at(i, c).abs();
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0) {
      r.singular = true;
      return r;
    }
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(r.lu.at(c, j), r.lu.at(p, j));
      r.sign = -r.sign;
    }
    Cplx inv = Cplx(1) / r.lu.at(c, c);
    for (int i = c + 1; i < n; ++i) {
      Cplx f = r.lu.at(i, c) * inv;
      r.lu.at(i, c) = f;
      for (int j = c + 1; j < n; ++j) r.lu.at(i, j) -= f * r.lu.at(c, j);
    }
  }
  return r;
}

}  // namespace detail

inline Cplx det(const CMat& m) {
  auto lu = detail::lu_decompose(m);
  if (lu.singular) return Cplx(0);
  Cplx d(lu.sign);
  for (int i = 0; i < m.n; ++i) d = d * lu.lu.at(i, i);
  return d;
}

inline CMat inverse(const CMat& m) {
  int n = m.n;
  // Gauss-Jordan against an identity block, with partial pivoting
  CMat w = m, inv = identity(n);
  for (int c = 0; c < n; ++c) {
    int p = c;
    Real best = w.at(c, c).abs();
    for (int i = c + 1; i < n; ++i) {
      Real v = w.at(i, c).abs();
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0) throw std::invalid_argument("matrix not invertible");
    if (p != c)
      for (int j = 0; j < n; ++j) {
        std::swap(w.at(c, j), w.at(p, j));
        std::swap(inv.at(c, j), inv.at(p, j));
      }
    Cplx piv = Cplx(1) / w.at(c, c);
    for (int j = 0; j < n; ++j) {
      w.at(c, j) = w.at(c, j) * piv;
      inv.at(c, j) = inv.at(c, j) * piv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c) continue;
      Cplx f = w.at(i, c);
      if (f.re == 0 && f.im == 0) continue;
      for (int j = 0; j < n; ++j) {
        w.at(i, j) -= f * w.at(c, j);
        inv.at(i, j) -= f * inv.at(c, j);
      }
    }
  }
  return inv;
}

// C has positive Hermitian part iff every leading principal minor of
// (C + C^dagger)/2 is positive (Sylvester)
inline bool positive_hermitian_part(const CMat& c) {
  int n = c.n;
  CMat h(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      h.at(i, j) = (c.at(i, j) + c.at(j, i).conj()) * (Real(1) / 2);
  for (int k = 1; k <= n; ++k) {
    CMat sub(k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub.at(i, j) = h.at(i, j);
    if (!(det(sub).re > 0)) return false;
  }
  return true;
}

// covariance with its inverse, sampling flag says the Hermitian-part test ran
struct Cov {
  CMat C;
  CMat A;
  bool verified = false;
};

inline Cov make_covariance(CMat c) {
  if (!positive_hermitian_part(c))
    throw std::invalid_argument("covariance lacks positive Hermitian part");
  CMat a = inverse(c);
  return Cov{std::move(c), std::move(a), true};
}

// C = I + 0.3 (R + iS)/|R + iS|_F with R, S entrywise uniform on [-1, 1),
// resampled until the Hermitian part verifies (the normalisation makes
// rejection essentially impossible, but the loop keeps the contract honest)
inline Cov random_covariance(int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&rng]() {
    // top 53 bits -> [0,1), mapped to [-1,1); avoids distribution objects so
    // the stream is identical across standard libraries
    return Real(rng() >> 11) / Real(std::uint64_t(1) << 53) * 2 - 1;
  };
  for (int tries = 0; tries < 64; ++tries) {
    CMat p(m);
    Real fro(0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        Real re = draw(), im = draw();
        fro += re * re + im * im;
        p.at(i, j) = Cplx{re, im};
      }
    Real scale = Real(3) / (10 * sqrt(fro));
    CMat c = identity(m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) c.at(i, j) += p.at(i, j) * scale;
    if (positive_hermitian_part(c)) return Cov{c, inverse(c), true};
  }
  throw std::runtime_error("covariance sampling kept failing");
}

// --- forms ---------------------------------------------------------------

// Fermion content of a term is a bitmask: bit 2x is psi_x, bit 2x+1 is
// psibar_x, and the stored coefficient refers to the mask's generators in
// ascending bit order.  Boson content packs the exponent of phi_x into
// nibble 2x and of phibar_x into nibble 2x+1 of one 64-bit word.
using FermionMask = std::uint32_t;
using BosonMono = std::uint64_t;

namespace detail {

// sign of moving the generators of b into those of a (both canonically
// ordered, disjoint): one transposition per inversion
inline int merge_sign(FermionMask a, FermionMask b) {
  int sw = 0;
  while (b) {
    int bit = std::countr_zero(b);
    b &= b - 1;
    sw += std::popcount(a >> (bit + 1));
  }
  return sw % 2 ? -1 : 1;
}

inline BosonMono mono_mul(BosonMono a, BosonMono b) {
  BosonMono out = 0;
  for (int s = 0; s < 16; ++s) {
    BosonMono e = ((a >> (4 * s)) & 15) + ((b >> (4 * s)) & 15);
    if (e > 15) throw std::overflow_error("boson exponent exceeds 15");
    out |= e << (4 * s);
  }
  return out;
}

}  // namespace detail

struct Form {
  int M = 0;
  // (fermion mask, boson monomial) -> coefficient; exact zeros are pruned
  std::map<std::pair<FermionMask, BosonMono>, Cplx> t;

  explicit Form(int m) : M(m) {
    if (m < 1 || m > 8) throw std::invalid_argument("M out of range");
  }

  Form& add_term(FermionMask mask, BosonMono mono, const Cplx& c) {
    auto& slot = t[{mask, mono}];
    slot += c;
    if (slot.re == 0 && slot.im == 0) t.erase({mask, mono});
    return *this;
  }

  bool operator==(const Form& o) const { return M == o.M && t == o.t; }
};

inline Form one(int m) { return Form(m).add_term(0, 0, Cplx(1)); }
inline Form phi(int m, int x) {
  return Form(m).add_term(0, BosonMono(1) << (4 * (2 * x)), Cplx(1));
}
inline Form phibar(int m, int x) {
  return Form(m).add_term(0, BosonMono(1) << (4 * (2 * x + 1)), Cplx(1));
}
inline Form psi(int m, int x) {
  return Form(m).add_term(FermionMask(1) << (2 * x), 0, Cplx(1));
}
inline Form psibar(int m, int x) {
  return Form(m).add_term(FermionMask(1) << (2 * x + 1), 0, Cplx(1));
}
// tau_x = phi_x phibar_x + psi_x psibar_x
inline Form tau(int m, int x) {
  Form f(m);
  f.add_term(0, (BosonMono(0x11)) << (4 * (2 * x)), Cplx(1));
  f.add_term(FermionMask(3) << (2 * x), 0, Cplx(1));
  return f;
}

inline Form operator+(const Form& a, const Form& b) {
  if (a.M != b.M) throw std::invalid_argument("mixed index sets");
  Form out = a;
  for (const auto& [k, c] : b.t) out.add_term(k.first, k.second, c);
  return out;
}

inline Form operator*(const Form& a, const Cplx& s) {
  Form out(a.M);
  for (const auto& [k, c] : a.t) out.add_term(k.first, k.second, c * s);
  return out;
}

inline Form operator-(const Form& a, const Form& b) {
  return a + b * Cplx(-1);
}

inline Form operator*(const Form& a, const Form& b) {
  if (a.M != b.M) throw std::invalid_argument("mixed index sets");
  Form out(a.M);
  for (const auto& [ka, ca] : a.t)
    for (const auto& [kb, cb] : b.t) {
      if (ka.first & kb.first) continue;  // repeated generator squares to 0
      int sgn = detail::merge_sign(ka.first, kb.first);
      Cplx c = ca * cb;
      if (sgn < 0) c = -c;
      out.add_term(ka.first | kb.first,
                   detail::mono_mul(ka.second, kb.second), c);
    }
  return out;
}

// d/dphi_x, acting on boson exponents only (phi commutes with everything)
inline Form dphi(const Form& f, int x) {
  Form out(f.M);
  int shift = 4 * (2 * x);
  for (const auto& [k, c] : f.t) {
    BosonMono e = (k.second >> shift) & 15;
    if (e == 0) continue;
    out.add_term(k.first, k.second - (BosonMono(1) << shift),
                 c * Real(static_cast<long>(e)));
  }
  return out;
}

// --- permanents and Wick reduction ---------------------------------------

namespace detail {

inline Cplx naive_permanent(const std::vector<std::vector<Cplx>>& b) {
  int k = static_cast<int>(b.size());
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  Cplx total;
  do {
    Cplx prod(1);
    for (int i = 0; i < k; ++i) prod = prod * b[i][perm[i]];
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline Cplx ryser_permanent(const std::vector<std::vector<Cplx>>& b) {
  int k = static_cast<int>(b.size());
  if (k > 20) throw std::length_error("permanent too large");
  Cplx total;
  for (std::uint32_t s = 1; s < (1u << k); ++s) {
    Cplx prod(1);
    for (int i = 0; i < k; ++i) {
      Cplx row;
      for (std::uint32_t r = s; r;) {
        int j = std::countr_zero(r);
        r &= r - 1;
        row += b[i][j];
      }
      prod = prod * row;
    }
    if ((k - std::popcount(s)) % 2) prod = -prod;
    total += prod;
  }
  return total;
}

// E[prod phibar_{rows} prod phi_{cols}] = perm C[rows, cols]; index lists
// may repeat (monomials with squared symbols)
inline Cplx wick_monomial(const CMat& c, BosonMono mono) {
  std::vector<int> rows, cols;
  for (int x = 0; x < c.n; ++x) {
    BosonMono ep = (mono >> (4 * (2 * x))) & 15;
    BosonMono eb = (mono >> (4 * (2 * x + 1))) & 15;
    for (BosonMono i = 0; i < eb; ++i) rows.push_back(x);
    for (BosonMono i = 0; i < ep; ++i) cols.push_back(x);
  }
  if (rows.size() != cols.size()) return Cplx(0);  // unmatched phase
  if (rows.empty()) return Cplx(1);
  std::vector<std::vector<Cplx>> b(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      b[i].push_back(c.at(rows[i], cols[j]));
  return ryser_permanent(b);
}

}  // namespace detail

// permanent of C[xs, ys]; rows are phibar indices, columns phi indices, as in
// E[phibar_{x1} phi_{y1} ... ] for distinct index lists.  k <= 4 is
// cross-checked against the direct permutation sum.
inline Cplx wick_permanent(const CMat& c, const std::vector<int>& xs,
                           const std::vector<int>& ys) {
  if (xs.size() != ys.size() || xs.empty())
    throw std::invalid_argument("index lists must be nonempty, equal length");
  if (xs.size() > static_cast<std::size_t>(c.n))
    throw std::invalid_argument("more indices than matrix rows");
  auto distinct = [&](const std::vector<int>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < 0 || v[i] >= c.n)
        throw std::out_of_range("index outside matrix");
      for (std::size_t j = i + 1; j < v.size(); ++j)
        if (v[i] == v[j]) throw std::invalid_argument("repeated index");
    }
  };
  distinct(xs);
  distinct(ys);
  std::vector<std::vector<Cplx>> b(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j)
      b[i].push_back(c.at(xs[i], ys[j]));
  Cplx r = detail::ryser_permanent(b);
  if (xs.size() <= 4) {
    Cplx naive = detail::naive_permanent(b);
    if ((r - naive).abs() > Real("1e-10") * (Real(1) + r.abs()))
      throw std::logic_error("permanent routes disagree");
  }
  return r;
}

// fermion-only terms of e^{-psi A psibar}, keyed by mask.  The full-mask
// coefficient is (-1)^M det A; the identity is what the unit tests pin.
inline std::map<FermionMask, Cplx> fermion_exponential(const CMat& a) {
  int m = a.n;
  std::map<FermionMask, Cplx> out, cur;
  cur[0] = Cplx(1);
  out = cur;
  for (int k = 1; k <= m; ++k) {
    std::map<FermionMask, Cplx> nxt;
    Real step = Real(-1) / k;  // next factor of -psi A psibar / k
    for (const auto& [mask, c] : cur)
      for (int x = 0; x < m; ++x) {
        FermionMask bx = FermionMask(1) << (2 * x);
        if (mask & bx) continue;
        for (int y = 0; y < m; ++y) {
          FermionMask by = FermionMask(1) << (2 * y + 1);
          if (mask & by) continue;
          // psi_x psibar_y is reversed relative to canonical order if x > y
          int sgn = detail::merge_sign(mask, bx | by) * (x > y ? -1 : 1);
          Cplx add = c * a.at(x, y) * step;
          if (sgn < 0) add = -add;
          auto& slot = nxt[mask | bx | by];
          slot += add;
        }
      }
    for (const auto& [mask, c] : nxt) out[mask] += c;
    cur = std::move(nxt);
  }
  return out;
}

inline Cplx fermion_top_coefficient(const CMat& a) {
  auto e = fermion_exponential(a);
  FermionMask full = (FermionMask(1) << (2 * a.n)) - 1;
  auto it = e.find(full);
  return it == e.end() ? Cplx(0) : it->second;
}

// normalised Gaussian superexpectation of F with A = C^{-1}
inline Cplx superexpectation(const CMat& a, const Form& f) {
  if (f.M != a.n) throw std::invalid_argument("form and matrix sizes differ");
  Cplx d = det(a);
  if (d.re == 0 && d.im == 0)
    throw std::invalid_argument("matrix not invertible");
  CMat c = inverse(a);
  auto expf = fermion_exponential(a);
  FermionMask full = (FermionMask(1) << (2 * a.n)) - 1;
  Cplx acc;
  for (const auto& [key, coeff] : f.t) {
    auto it = expf.find(full ^ key.first);
    if (it == expf.end()) continue;  // odd or unreachable fermion content
    int sgn = detail::merge_sign(full ^ key.first, key.first);
    Cplx term = it->second * coeff * detail::wick_monomial(c, key.second);
    if (sgn < 0) term = -term;
    acc += term;
  }
  Cplx norm = Cplx(a.n % 2 ? -1 : 1) / d;
  return acc * norm;
}

// |E[phibar_a F] - sum_x C_{ax} E[dF/dphi_x]|
inline Real integration_by_parts_check(const CMat& a, int idx, const Form& f) {
  if (idx < 0 || idx >= a.n) throw std::out_of_range("index outside matrix");
  Cplx lhs = superexpectation(a, phibar(a.n, idx) * f);
  CMat c = inverse(a);
  Cplx rhs;
  for (int x = 0; x < a.n; ++x) {
    Form df = dphi(f, x);
    if (df.t.empty()) continue;
    rhs += c.at(idx, x) * superexpectation(a, df);
  }
  return (lhs - rhs).abs();
}

// --- walk representation and the loop background -------------------------

struct RepSawReport {
  Cplx lhs;  // direct sum over self-avoiding index sequences a -> b
  Cplx rhs;  // E[phibar_a phi_b prod_{x != a,b} (1 + tau_x)]
  Real residual;
};

inline RepSawReport saw_representation_check(const Cov& cov, int a, int b,
                                             int cap = 7) {
  const CMat& c = cov.C;
  if (c.n > cap) throw std::length_error("index set larger than cap");
  if (a < 0 || b < 0 || a >= c.n || b >= c.n || a == b)
    throw std::invalid_argument("need two distinct indices");
  std::vector<int> mid;
  for (int x = 0; x < c.n; ++x)
    if (x != a && x != b) mid.push_back(x);

  Cplx lhs;
  std::vector<char> used(c.n, 0);
  auto dfs = [&](auto&& self, int v, const Cplx& w) -> void {
    lhs += w * c.at(v, b);
    for (int x : mid) {
      if (used[x]) continue;
      used[x] = 1;
      self(self, x, w * c.at(v, x));
      used[x] = 0;
    }
  };
  dfs(dfs, a, Cplx(1));

  Form f = phibar(c.n, a) * phi(c.n, b);
  for (int x : mid) f = f * (one(c.n) + tau(c.n, x));
  Cplx rhs = superexpectation(cov.A, f);
  return {lhs, rhs, (lhs - rhs).abs()};
}

struct LoopModelReport {
  Cplx gaussian;       // Wick reduction of phibar_a phi_b prod_X (1+phi phibar)
  Cplx combinatorial;  // walks through X weighted by permutation backgrounds
  Real residual;
};

// purely bosonic analogue: without the fermions the expansion picks up a
// background of permutation cycles on the unused indices
inline LoopModelReport loop_model_expansion(const CMat& c, int a, int b,
                                            const std::vector<int>& xs) {
  if (a < 0 || b < 0 || a >= c.n || b >= c.n || a == b)
    throw std::invalid_argument("need two distinct indices");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < 0 || xs[i] >= c.n || xs[i] == a || xs[i] == b)
      throw std::invalid_argument("background index collides");
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (xs[i] == xs[j]) throw std::invalid_argument("repeated index");
  }
  int nx = static_cast<int>(xs.size());
  if (nx > 12) throw std::length_error("background set too large");

  Form f = phibar(c.n, a) * phi(c.n, b);
  for (int x : xs) f = f * (one(c.n) + phi(c.n, x) * phibar(c.n, x));
  Cplx gauss;
  for (const auto& [key, coeff] : f.t)
    gauss += coeff * detail::wick_monomial(c, key.second);

  // sum over permutations of every subset of ys (cycle backgrounds)
  auto loop_sum = [&c](const std::vector<int>& ys) {
    Cplx total;
    int k = static_cast<int>(ys.size());
    for (std::uint32_t s = 0; s < (1u << k); ++s) {
      std::vector<int> z;
      for (int i = 0; i < k; ++i)
        if (s & (1u << i)) z.push_back(ys[i]);
      std::vector<int> perm(z.size());
      for (std::size_t i = 0; i < z.size(); ++i) perm[i] = static_cast<int>(i);
      do {
        Cplx prod(1);
        for (std::size_t i = 0; i < z.size(); ++i)
          prod = prod * c.at(z[i], z[perm[i]]);
        total += prod;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return total;
  };

  Cplx comb;
  std::vector<char> used(c.n, 0);
  auto dfs = [&](auto&& self, int v, const Cplx& w) -> void {
    std::vector<int> rest;
    for (int x : xs)
      if (!used[x]) rest.push_back(x);
    comb += w * c.at(v, b) * loop_sum(rest);
    for (int x : xs) {
      if (used[x]) continue;
      used[x] = 1;
      self(self, x, w * c.at(v, x));
      used[x] = 0;
    }
  };
  dfs(dfs, a, Cplx(1));

  return {gauss, comb, (gauss - comb).abs()};
}

}  // namespace sawlab::gr
