#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sawlab/reference.hpp"
#include "sawlab/walks.hpp"

using namespace sawlab;

namespace {
Coord C(int a, int b = 0, int c = 0) {
  Coord x{};
  x[0] = a;
  x[1] = b;
  x[2] = c;
  return x;
}
}  // namespace

// Known exact values, frozen from an independent enumeration.
static const long long kC2[] = {1, 4, 12, 36, 100, 284, 780, 2172, 5916, 16268, 44100};
static const long long kC3[] = {1, 6, 30, 150, 726, 3534, 16926, 81390};
static const long long kB2[] = {1, 1, 3, 7, 17, 41, 101, 251, 631, 1591, 4029};
static const long long kB3[] = {1, 1, 5, 21, 89, 369, 1553, 6573};
static const long long kH2[] = {1, 1, 3, 7, 19, 49, 131, 339, 899, 2345, 6199};
static const long long kH3[] = {1, 1, 5, 21, 93, 409, 1853, 8333};
static const long long kCe1_2[] = {0, 1, 0, 2, 0, 6, 0, 28, 0, 140, 0};
static const long long kCe1_3[] = {0, 1, 0, 4, 0, 44, 0, 552};
static const long long kRet2[] = {0, 0, 4, 0, 8, 0, 24, 0, 112, 0, 560};
static const long long kRet3[] = {0, 0, 6, 0, 24, 0, 264, 0};

TEST_CASE("walk counts match the frozen tables") {
  auto z2 = parse_lattice("z2");
  auto r2 = count_walks(z2, 10, Rat(1));
  for (int k = 0; k <= 10; ++k) CHECK(r2.c[k] == Int(kC2[k]));

  auto z3 = parse_lattice("z3");
  auto r3 = count_walks(z3, 7, Rat(1));
  for (int k = 0; k <= 7; ++k) CHECK(r3.c[k] == Int(kC3[k]));
}

TEST_CASE("endpoint tables") {
  auto z2 = parse_lattice("z2");
  auto r = count_walks(z2, 10, Rat(1), true);
  for (int k = 0; k <= 10; ++k) {
    auto it = r.by_endpoint[k].find(C(1));
    Int v = it == r.by_endpoint[k].end() ? Int(0) : it->second;
    CHECK(v == Int(kCe1_2[k]));
    // table sums back to the total
    Int sum = 0;
    for (auto& [x, c] : r.by_endpoint[k]) sum += c;
    CHECK(sum == r.c[k]);
  }
  CHECK(r.by_endpoint[2][C(2)] == 1);
  CHECK(r.by_endpoint[2][C(1, 1)] == 2);
  CHECK(!r.by_endpoint[2].count(C(0)));  // a SAW cannot return to the origin
  CHECK(r.by_endpoint[3][C(1)] == 2);
  CHECK(r.by_endpoint[3][C(2, 1)] == 3);
  CHECK(r.by_endpoint[3][C(1, 0)] == 2);

  // lattice symmetry: counts invariant under axis permutation/reflection
  AxisMap m{{1, 0, 2, 3, 4}, {-1, 1, 1, 1, 1}};
  for (auto& [x, c] : r.by_endpoint[7]) {
    auto it = r.by_endpoint[7].find(m.apply(x));
    REQUIRE(it != r.by_endpoint[7].end());
    CHECK(it->second == c);
  }

  auto z3 = parse_lattice("z3");
  auto r3 = count_walks(z3, 7, Rat(1), true);
  for (int k = 0; k <= 7; ++k) {
    auto it = r3.by_endpoint[k].find(C(1));
    Int v = it == r3.by_endpoint[k].end() ? Int(0) : it->second;
    CHECK(v == Int(kCe1_3[k]));
  }
}

TEST_CASE("bridges, spans and half-space walks") {
  auto z2 = parse_lattice("z2");
  auto br = count_bridges(z2, 10);
  for (int k = 0; k <= 10; ++k) CHECK(br.b[k] == Int(kB2[k]));
  auto hs = count_half_space(z2, 10);
  for (int k = 0; k <= 10; ++k) CHECK(hs[k] == Int(kH2[k]));

  // span histogram of b_6 on z2
  std::map<int, Int> expect{{1, 2}, {2, 18}, {3, 38}, {4, 32}, {5, 10}, {6, 1}};
  CHECK(br.by_span[6] == expect);
  // spans partition the bridges
  for (int k = 0; k <= 10; ++k) {
    Int s = 0;
    for (auto& [a, v] : br.by_span[k]) s += v;
    CHECK(s == br.b[k]);
  }

  auto z3 = parse_lattice("z3");
  auto br3 = count_bridges(z3, 7);
  for (int k = 0; k <= 7; ++k) CHECK(br3.b[k] == Int(kB3[k]));
  auto hs3 = count_half_space(z3, 7);
  for (int k = 0; k <= 7; ++k) CHECK(hs3[k] == Int(kH3[k]));
}

TEST_CASE("returns and polygons") {
  auto z2 = parse_lattice("z2");
  for (int m = 1; m <= 10; ++m) CHECK(count_returns(z2, m) == Int(kRet2[m]));
  CHECK(count_polygons(z2, 2) == 1);
  CHECK(count_polygons(z2, 4) == 1);
  CHECK(count_polygons(z2, 6) == 2);
  CHECK(count_polygons(z2, 8) == 7);
  CHECK(count_polygons(z2, 10) == 28);

  auto z3 = parse_lattice("z3");
  for (int m = 1; m <= 7; ++m) CHECK(count_returns(z3, m) == Int(kRet3[m]));
  CHECK(count_polygons(z3, 4) == 3);
  CHECK(count_polygons(z3, 6) == 22);

  CHECK_THROWS(count_polygons(z2, 5));
  CHECK_THROWS(count_polygons(z2, 0));
}

TEST_CASE("weighted ensemble") {
  auto z2 = parse_lattice("z2");

  SUBCASE("lambda = 0 gives simple random walk counts") {
    auto r = count_walks(z2, 6, Rat(0));
    REQUIRE(r.weighted);
    Rat pw(1);
    for (int k = 0; k <= 6; ++k) {
      CHECK(r.c_rat[k] == pw);
      pw *= 4;
    }
  }

  SUBCASE("lambda = 1 through the weighted kernel reproduces SAW counts") {
    auto naive = ref::weighted_counts(z2, 5, Rat(1));
    auto saw = count_walks(z2, 5, Rat(1));
    for (int k = 0; k <= 5; ++k) CHECK(naive[k] == Rat(saw.c[k]));
  }

  SUBCASE("intermediate lambda matches the literal definition") {
    for (const Rat& lam : {Rat(1, 2), Rat(1, 3), Rat(7, 9)}) {
      auto fast = count_walks(z2, 5, lam, true);
      auto naive = ref::weighted_counts(z2, 5, lam);
      for (int k = 0; k <= 5; ++k) CHECK(fast.c_rat[k] == naive[k]);
    }
    auto z3 = parse_lattice("z3");
    auto fast = count_walks(z3, 3, Rat(1, 2));
    auto naive = ref::weighted_counts(z3, 3, Rat(1, 2));
    for (int k = 0; k <= 3; ++k) CHECK(fast.c_rat[k] == naive[k]);
  }

  SUBCASE("monotone in lambda: more repulsion, smaller sum") {
    auto a = count_walks(z2, 5, Rat(1, 4));
    auto b = count_walks(z2, 5, Rat(3, 4));
    for (int k = 2; k <= 5; ++k) CHECK(a.c_rat[k] > b.c_rat[k]);
  }

  CHECK_THROWS(count_walks(z2, 3, Rat(3, 2)));
  CHECK_THROWS(count_walks(z2, 3, Rat(-1, 2)));
}

TEST_CASE("parallel kernel agrees with the naive reference") {
  auto z2 = parse_lattice("z2");
  CHECK(ref::count_walks(z2, 7) ==
        std::vector<Int>(count_walks(z2, 7, Rat(1)).c));
  CHECK(ref::count_bridges(z2, 7) == count_bridges(z2, 7).b);
  CHECK(ref::count_half_space(z2, 7) == count_half_space(z2, 7));
  auto t = ref::endpoint_tables(z2, 6);
  auto r = count_walks(z2, 6, Rat(1), true);
  for (int k = 0; k <= 6; ++k) CHECK(t[k] == r.by_endpoint[k]);

  auto z3 = parse_lattice("z3");
  CHECK(ref::count_walks(z3, 5) ==
        std::vector<Int>(count_walks(z3, 5, Rat(1)).c));
  CHECK(ref::count_bridges(z3, 5) == count_bridges(z3, 5).b);

  auto so = parse_lattice("zd2-so2");
  CHECK(ref::count_walks(so, 3) ==
        std::vector<Int>(count_walks(so, 3, Rat(1)).c));
  CHECK(count_walks(so, 2, Rat(1)).c[2] == Int(24 * 23));
}

TEST_CASE("results are identical for any worker count") {
  auto z2 = parse_lattice("z2");
  EnumConfig c1, c2, c8;
  c1.threads = 1;
  c2.threads = 2;
  c8.threads = 8;
  auto r1 = count_walks(z2, 12, Rat(1), true, c1);
  auto r2 = count_walks(z2, 12, Rat(1), true, c2);
  auto r8 = count_walks(z2, 12, Rat(1), true, c8);
  CHECK(r1.c == r2.c);
  CHECK(r1.c == r8.c);
  for (int k = 0; k <= 12; ++k) {
    CHECK(r1.by_endpoint[k] == r2.by_endpoint[k]);
    CHECK(r1.by_endpoint[k] == r8.by_endpoint[k]);
  }
  auto b1 = count_bridges(z2, 12, false, c1);
  auto b8 = count_bridges(z2, 12, false, c8);
  CHECK(b1.b == b8.b);
  CHECK(b1.by_span == b8.by_span);
}

TEST_CASE("node budget aborts enumeration") {
  auto z2 = parse_lattice("z2");
  EnumConfig tiny;
  tiny.node_budget = 1000;
  CHECK_THROWS_AS(count_walks(z2, 16, Rat(1), false, tiny), BudgetExceeded);
  EnumConfig ample;
  ample.node_budget = 100000000;
  CHECK(count_walks(z2, 8, Rat(1), false, ample).c[8] == Int(5916));
}

TEST_CASE("restricted-domain weighted tables") {
  auto z2 = parse_lattice("z2");
  // 2x2 block of sites
  std::vector<Coord> dom{C(0, 0), C(1, 0), C(0, 1), C(1, 1)};
  auto t = count_restricted(z2, 3, Rat(1), dom, C(0, 0));
  // only SAWs inside the block; length-3 walks from a corner end at the
  // diagonally opposite corner going around either way... both end adjacent
  Rat total3;
  for (auto& [x, w] : t.by_endpoint[3]) total3 += w;
  CHECK(t.by_endpoint[0].size() == 1);
  CHECK(t.by_endpoint[1].size() == 2);
  CHECK(total3 == Rat(2));  // the two ways around the square
  CHECK_THROWS(count_restricted(z2, 2, Rat(1), dom, C(5, 5)));

  // restricted with the full box reproduces free weighted counts
  std::vector<Coord> big;
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y) big.push_back(C(x, y));
  auto free_t = count_walks(z2, 3, Rat(1, 2), true);
  auto dom_t = count_restricted(z2, 3, Rat(1, 2), big, C(0, 0));
  Rat s1, s2;
  for (auto& [x, w] : free_t.by_endpoint_rat[3]) s1 += w;
  for (auto& [x, w] : dom_t.by_endpoint[3]) s2 += w;
  CHECK(s1 == s2);
}

TEST_CASE("walk growth invariants") {
  auto z2 = parse_lattice("z2");
  auto r = count_walks(z2, 10, Rat(1));
  Int pow2d = 1, pow2dm1 = 1;
  for (int k = 1; k <= 10; ++k) {
    pow2d *= 2;  // d = 2
    pow2dm1 = k == 1 ? Int(4) : pow2dm1 * 3;
    CHECK(r.c[k] >= pow2d);        // d^n lower bound
    CHECK(r.c[k] <= pow2dm1);      // 2d(2d-1)^{n-1} upper bound
    if (k >= 2) CHECK(r.c[k] >= r.c[k - 2]);  // c_{n+2} >= c_n
    if (k >= 3) {
      // ratio window [d^2, (2d-1)^2], valid from n = 1 on
      CHECK(r.c[k] >= 4 * r.c[k - 2]);
      CHECK(r.c[k] <= 9 * r.c[k - 2]);
    }
  }
  // submultiplicativity on a few splits
  for (int m = 1; m <= 5; ++m)
    CHECK(r.c[10] <= r.c[m] * r.c[10 - m]);
}

TEST_CASE("walk listing helpers") {
  auto z2 = parse_lattice("z2");
  auto all = list_saws(z2, 3);
  CHECK(all.size() == 36);
  for (auto& w : all) REQUIRE(w.size() == 4);
  auto hw = list_half_space_walks(z2, 4);
  CHECK(hw.size() == 19);

  struct Counter : WalkVisitor {
    long long leaves = 0;
    int n;
    bool enter(int j, const Coord&) override {
      if (j == n) ++leaves;
      return true;
    }
    void leave(int) override {}
  } v;
  v.n = 4;
  for_each_walk(z2, 4, v);
  CHECK(v.leaves == 256);  // all 4^4 unrestricted walks
}
