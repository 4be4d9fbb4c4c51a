#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "sawlab/grassmann.hpp"

using namespace sawlab;
using namespace sawlab::gr;

namespace {

Real tol(const char* s) { return Real(s); }

// test-side determinant by cofactor expansion along the first row
Cplx cofactor_det(const CMat& m, std::vector<int> rows, std::vector<int> cols) {
  if (rows.empty()) return Cplx(1);
  Cplx total;
  int r = rows.front();
  std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    std::vector<int> sub_cols;
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (k != j) sub_cols.push_back(cols[k]);
    Cplx term = m.at(r, cols[j]) * cofactor_det(m, sub_rows, sub_cols);
    total += (j % 2) ? -term : term;
  }
  return total;
}

Cplx cofactor_det(const CMat& m) {
  std::vector<int> idx;
  for (int i = 0; i < m.n; ++i) idx.push_back(i);
  return cofactor_det(m, idx, idx);
}

}  // namespace

TEST_CASE("generator algebra") {
  set_precision_bits(106);
  const int m = 3;

  // anticommutation and square-zero, exact on integer coefficients
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      CHECK((psi(m, i) * psi(m, j)) == (psi(m, j) * psi(m, i)) * Cplx(-1));
      CHECK((psi(m, i) * psibar(m, j)) ==
            (psibar(m, j) * psi(m, i)) * Cplx(-1));
    }
  CHECK((psi(m, 1) * psi(m, 1)).t.empty());
  CHECK((psibar(m, 2) * psibar(m, 2)).t.empty());

  // odd forms anticommute term by term
  Form f = psi(m, 0) + psibar(m, 1) + psi(m, 2) * psibar(m, 0) * psi(m, 1);
  Form g = psibar(m, 2) + psi(m, 1) * Cplx(3) + psi(m, 0) * tau(m, 1);
  CHECK((f * g) == (g * f) * Cplx(-1));

  // even forms commute, bosons commute with everything
  Form e1 = one(m) + tau(m, 0) * Cplx(2) + psi(m, 1) * psibar(m, 2);
  Form e2 = tau(m, 2) + phi(m, 0) * phibar(m, 1);
  CHECK((e1 * e2) == (e2 * e1));
  CHECK((phi(m, 0) * f) == (f * phi(m, 0)));

  // degree guards
  CHECK_THROWS_AS(Form(9), std::invalid_argument);
  CHECK_THROWS_AS(phi(m, 0) * one(2), std::invalid_argument);
  Form p16 = one(m);
  for (int i = 0; i < 15; ++i) p16 = p16 * phi(m, 0);
  CHECK_THROWS_AS(p16 * phi(m, 0), std::overflow_error);
}

TEST_CASE("wick permanents") {
  set_precision_bits(106);
  auto cov = random_covariance(5, 42);
  const CMat& c = cov.C;

  CHECK((wick_permanent(c, {0}, {3}) - c.at(0, 3)).abs() < tol("1e-30"));
  Cplx k2 = c.at(0, 2) * c.at(1, 3) + c.at(0, 3) * c.at(1, 2);
  CHECK((wick_permanent(c, {0, 1}, {2, 3}) - k2).abs() < tol("1e-30"));

  // k = 3, 4 against the test-side permutation sum
  for (int k : {3, 4}) {
    std::vector<int> xs, ys;
    for (int i = 0; i < k; ++i) {
      xs.push_back(i);
      ys.push_back(k - 1 - i + (k == 3 ? 1 : 0));
    }
    std::vector<int> perm = ys;
    std::sort(perm.begin(), perm.end());
    Cplx naive;
    do {
      Cplx prod(1);
      for (int i = 0; i < k; ++i) prod = prod * c.at(xs[i], perm[i]);
      naive += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK((wick_permanent(c, xs, ys) - naive).abs() < tol("1e-12"));
  }

  CHECK_THROWS_AS(wick_permanent(c, {0, 0}, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(wick_permanent(c, {0, 1}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(wick_permanent(c, {0, 9}, {1, 2}), std::out_of_range);
}

TEST_CASE("self-normalisation over random covariances") {
  set_precision_bits(106);
  for (int seed = 0; seed < 100; ++seed) {
    int m = 1 + seed % 5;
    auto cov = random_covariance(m, seed);
    CHECK(cov.verified);
    Cplx e = superexpectation(cov.A, one(m));
    CHECK((e - Cplx(1)).abs() < tol("1e-10"));
  }

  // the residual is pure roundoff, so more mantissa pushes it down
  set_precision_bits(53);
  auto c53 = random_covariance(4, 99);
  Real r53 = (superexpectation(c53.A, one(4)) - Cplx(1)).abs();
  set_precision_bits(106);
  auto c106 = random_covariance(4, 99);
  Real r106 = (superexpectation(c106.A, one(4)) - Cplx(1)).abs();
  CHECK(r53 < tol("1e-10"));
  CHECK(r106 < r53);
  CHECK(r106 < tol("1e-25"));
}

TEST_CASE("pair expectations") {
  set_precision_bits(106);
  auto cov = random_covariance(4, 7);
  for (auto [a, b] : {std::pair{1, 2}, {0, 3}, {2, 2}}) {
    Cplx e = superexpectation(cov.A, phibar(4, a) * phi(4, b));
    CHECK((e - cov.C.at(a, b)).abs() < tol("1e-28"));
  }
  // fermion pairs carry the transposed covariance with a minus sign, which
  // is exactly what cancels the boson loop in tau
  for (auto [x, y] : {std::pair{0, 1}, {2, 3}, {1, 1}}) {
    Cplx e = superexpectation(cov.A, psi(4, x) * psibar(4, y));
    CHECK((e + cov.C.at(y, x)).abs() < tol("1e-28"));
  }
}

TEST_CASE("polynomials in tau integrate to their constant term") {
  set_precision_bits(106);
  auto cov = random_covariance(4, 5);

  CHECK(superexpectation(cov.A, tau(4, 1) * tau(4, 2)).abs() < tol("1e-28"));
  Form g = (one(4) + tau(4, 1)) * (one(4) + tau(4, 3)) - one(4);
  CHECK(superexpectation(cov.A, g).abs() < tol("1e-28"));

  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    int m = 3 + static_cast<int>(rng() % 3);
    auto cv = random_covariance(m, 1000 + trial);
    long c0 = static_cast<long>(rng() % 9) - 4;
    Form f = one(m) * Cplx(Real(c0), Real(0));
    int nterms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < nterms; ++t) {
      Form term = tau(m, static_cast<int>(rng() % m));
      int extra = static_cast<int>(rng() % 3);
      for (int u = 0; u < extra; ++u)
        term = term * tau(m, static_cast<int>(rng() % m));
      long w = static_cast<long>(rng() % 7) - 3;
      f = f + term * Cplx(Real(w), Real(0));
    }
    Cplx e = superexpectation(cv.A, f);
    CHECK((e - Cplx(Real(c0), Real(0))).abs() < tol("1e-10"));
  }
}

TEST_CASE("integration by parts") {
  set_precision_bits(106);
  auto cov = random_covariance(4, 7);

  // F = phi_b: both sides are C_{ab}
  Cplx lhs = superexpectation(cov.A, phibar(4, 1) * phi(4, 2));
  CHECK((lhs - cov.C.at(1, 2)).abs() < tol("1e-28"));
  CHECK(integration_by_parts_check(cov.A, 1, phi(4, 2)) < tol("1e-28"));

  // no phi dependence: both sides vanish identically
  CHECK(integration_by_parts_check(cov.A, 0, one(4)) == 0);
  CHECK(integration_by_parts_check(cov.A, 0, psi(4, 1) * psibar(4, 2)) == 0);

  auto cov3 = random_covariance(3, 13);
  CHECK(integration_by_parts_check(cov3.A, 0, phi(3, 1) * tau(3, 2)) <
        tol("1e-10"));
  Form mixed = phi(4, 2) * tau(4, 3) + phi(4, 0) * phi(4, 2) * phibar(4, 3) +
               phi(4, 1) * Cplx(2) + phi(4, 3) * phi(4, 3) * tau(4, 0);
  for (int a = 0; a < 4; ++a)
    CHECK(integration_by_parts_check(cov.A, a, mixed) < tol("1e-10"));
}

TEST_CASE("walk representation equals the superintegral") {
  set_precision_bits(106);

  // two sites: only the direct step
  auto cov2 = random_covariance(2, 3);
  auto rep2 = saw_representation_check(cov2, 0, 1);
  CHECK((rep2.lhs - cov2.C.at(0, 1)).abs() < tol("1e-30"));
  CHECK(rep2.residual < tol("1e-12"));

  // three sites: direct step plus one detour
  auto cov3 = random_covariance(3, 11);
  auto rep3 = saw_representation_check(cov3, 0, 2);
  Cplx hand = cov3.C.at(0, 2) + cov3.C.at(0, 1) * cov3.C.at(1, 2);
  CHECK((rep3.lhs - hand).abs() < tol("1e-30"));
  CHECK(rep3.residual < tol("1e-12"));

  for (int seed = 0; seed < 100; ++seed) {
    int m = 2 + seed % 4;
    auto cov = random_covariance(m, 2000 + seed);
    int a = seed / 4 % m;
    int b = (a + 1 + seed % (m - 1)) % m;
    auto rep = saw_representation_check(cov, a, b);
    CHECK(rep.residual < tol("1e-9"));
  }
  for (int m : {6, 7})
    for (int seed = 0; seed < 10; ++seed) {
      auto cov = random_covariance(m, 3000 + 100 * m + seed);
      auto rep = saw_representation_check(cov, 0, 1 + seed % (m - 1));
      CHECK(rep.residual < tol("1e-9"));
    }

  auto cov8 = random_covariance(8, 1);
  CHECK_THROWS_AS(saw_representation_check(cov8, 0, 1), std::length_error);
  CHECK_THROWS_AS(saw_representation_check(cov3, 1, 1), std::invalid_argument);
}

TEST_CASE("volume coefficient is the determinant") {
  set_precision_bits(106);
  for (int m = 1; m <= 6; ++m) {
    auto cov = random_covariance(m, 500 + m);
    Cplx top = fermion_top_coefficient(cov.A);
    Cplx want = cofactor_det(cov.A);
    if (m % 2) want = -want;
    CHECK((top - want).abs() < tol("1e-12") * (Real(1) + want.abs()));
  }
}

TEST_CASE("loop background expansion") {
  set_precision_bits(106);
  auto cov3 = random_covariance(3, 11);

  auto l0 = loop_model_expansion(cov3.C, 0, 2, {});
  CHECK((l0.gaussian - cov3.C.at(0, 2)).abs() < tol("1e-30"));
  CHECK(l0.residual < tol("1e-30"));

  auto l1 = loop_model_expansion(cov3.C, 0, 2, {1});
  Cplx hand = cov3.C.at(0, 2) * (Cplx(1) + cov3.C.at(1, 1)) +
              cov3.C.at(0, 1) * cov3.C.at(1, 2);
  CHECK((l1.gaussian - hand).abs() < tol("1e-28"));
  CHECK(l1.residual < tol("1e-28"));

  // with all middles as background, the gap to the walk representation is
  // the loop excess the fermions remove; both routes agree on it
  auto cov5 = random_covariance(5, 23);
  auto loop = loop_model_expansion(cov5.C, 0, 4, {1, 2, 3});
  auto rep = saw_representation_check(cov5, 0, 4);
  CHECK(loop.residual < tol("1e-10"));
  Cplx excess_engine = loop.gaussian - rep.rhs;
  Cplx excess_comb = loop.combinatorial - rep.lhs;
  CHECK((excess_engine - excess_comb).abs() < tol("1e-9"));
  CHECK(excess_comb.abs() > tol("1e-3"));

  CHECK_THROWS_AS(loop_model_expansion(cov3.C, 0, 2, {0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(loop_model_expansion(cov3.C, 0, 2, {1, 1}),
                  std::invalid_argument);
}

TEST_CASE("covariance sampling contract") {
  set_precision_bits(106);
  for (int seed = 0; seed < 50; ++seed) {
    int m = 2 + seed % 4;
    auto cov = random_covariance(m, 4000 + seed);
    CHECK(cov.verified);
    CHECK(positive_hermitian_part(cov.C));
    // independent positivity evidence: Hermitian-part leading minors via the
    // cofactor determinant
    CMat h(m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        h.at(i, j) = (cov.C.at(i, j) + cov.C.at(j, i).conj()) * (Real(1) / 2);
    for (int k = 1; k <= m; ++k) {
      std::vector<int> idx;
      for (int i = 0; i < k; ++i) idx.push_back(i);
      Cplx d = cofactor_det(h, idx, idx);
      CHECK(d.re > 0);
      CHECK(abs(d.im) < tol("1e-25"));
    }
    // A really is the inverse
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        Cplx e;
        for (int k = 0; k < m; ++k) e += cov.A.at(i, k) * cov.C.at(k, j);
        CHECK((e - (i == j ? Cplx(1) : Cplx(0))).abs() < tol("1e-25"));
      }
  }
}
