#pragma once
// Exact truncated power-series algebra over the walk counts: susceptibility,
// bubble diagram, Fourier evaluation with rigorous geometric tail bounds, the
// series-level identities, and simple-random-walk reference integrals.
//
// Every inequality check here is either coefficientwise in exact rationals or
// an evaluation with an explicit tail bound from c_n <= |Omega|(|Omega|-1)^{n-1};
// nothing is extrapolated past the truncation order.

#include "sawlab/laces.hpp"
#include "sawlab/lattice.hpp"
#include "sawlab/walks.hpp"

#include <string>
#include <vector>

namespace sawlab {

// Power series truncated at a fixed order.  Binary operations close at the
// shorter truncation; coefficients that are not known are never invented.
struct SeriesTrunc {
  std::vector<Rat> a;  // a[i] multiplies z^i

  SeriesTrunc() : a(1, Rat(0)) {}
  explicit SeriesTrunc(int n_max) : a(n_max + 1, Rat(0)) {}

  int order() const { return static_cast<int>(a.size()) - 1; }
  const Rat& operator[](int i) const { return a.at(i); }
  Rat& operator[](int i) { return a.at(i); }

  SeriesTrunc operator+(const SeriesTrunc& o) const;
  SeriesTrunc operator-(const SeriesTrunc& o) const;
  SeriesTrunc operator*(const SeriesTrunc& o) const;
  SeriesTrunc derivative() const;              // order drops by one
  SeriesTrunc mul_z() const;                   // z * f, order grows by one
  SeriesTrunc scaled_arg(const Rat& s) const;  // f(s z)
  SeriesTrunc truncated(int n_max) const;
  Rat eval(const Rat& z) const;                // partial sum at z

  bool operator==(const SeriesTrunc&) const = default;
};

// "n,coefficient" CSV rows, rationals as p/q.
std::string series_csv(const SeriesTrunc& f);

// chi(z) truncation: coefficient of z^n is c_n^{(lambda)}.
SeriesTrunc susceptibility_series(const LatticeSpec& spec, const Rat& lambda,
                                  int n_max, const EnumConfig& cfg = {});

// B(z) = sum_x G_z(x)^2: coefficient of z^m is sum_{i+j=m} sum_x c_i(x) c_j(x).
SeriesTrunc bubble_series(const LatticeSpec& spec, int n_max,
                          const EnumConfig& cfg = {});

// Pi_hat_z(0) truncations: the signed total (from the recursion route) plus
// the one- and two-edge components separately (from the lace route).
struct PiHatSeries {
  SeriesTrunc total;  // signed
  SeriesTrunc n1, n2;  // nonnegative components
};
PiHatSeries pi_hat_series(const LatticeSpec& spec, int m_max,
                          const EnumConfig& cfg = {});

// Coefficientwise identity d[z chi]/dz = V(z) chi(z)^2 with
// V(z) = 1 - Pi_hat_z(0) + z dPi_hat_z(0)/dz, exact through order n_max.
struct OdeCheckReport {
  int n_max = 0;
  bool exact = false;
  int first_mismatch = -1;
  SeriesTrunc lhs, rhs;
};
OdeCheckReport susceptibility_ode_check(const LatticeSpec& spec, int n_max,
                                        const EnumConfig& cfg = {});

// cos(r pi) when it is rational (reduced denominator 1, 2 or 3); throws for
// any other angle, which would silently leave exact arithmetic.
Rat rational_cos_pi(const Rat& r);

// Partial sum of Ghat_z(k) = sum_n z^n sum_x c_n(x) cos(k.x) with k given as
// rational multiples of pi, plus the geometric bound on the discarded tail.
// The sine part vanishes by the x -> -x symmetry of the tables, so the value
// is real.
struct FourierEval {
  std::vector<Rat> k;  // components, in units of pi
  Real value;
  Rat tail;            // |true - value| <= tail
  int n_max = 0;
};
FourierEval fourier_two_point(const LatticeSpec& spec, const Rat& z,
                              const std::vector<Rat>& k, int n_max,
                              int precision_bits = 106,
                              const EnumConfig& cfg = {});

// Reciprocal identity (1 - z chat_1(k) - Pihat_z(k)) * Ghat_z(k) = 1 + O(z^{m_max+1})
// coefficientwise, in exact rationals (k restricted to rational-cosine angles).
// `product` holds the full polynomial product, order n_max + m_max.
struct GhatFormulaReport {
  int m_max = 0;
  bool ok = false;
  int first_bad = -1;
  std::vector<Rat> product;
};
GhatFormulaReport ghat_formula_check(const LatticeSpec& spec,
                                     const std::vector<Rat>& k, int n_max,
                                     int m_max, const EnumConfig& cfg = {});

// G - G_D <= sum_{u in boundary(D)} G_{Dbar}(0,u) G(u,0) coefficientwise at
// x = y = 0, where D is the box [lo, hi], boundary(D) its exterior neighbour
// set and Dbar their union.  Exact rationals, weakly SAW weight lambda.
struct SimonLiebReport {
  int n_max = 0;
  bool holds = false;
  int first_violation = -1;
  SeriesTrunc lhs, rhs;
};
SimonLiebReport simon_lieb_check(const LatticeSpec& spec, const Rat& lambda,
                                 const Coord& lo, const Coord& hi, int n_max,
                                 const EnumConfig& cfg = {});

// Torus domination: folding walks onto (Z/(2R+1)Z)^d only adds coincidences,
// so the torus susceptibility is dominated coefficientwise by the full one.
struct TorusDominationReport {
  int n_max = 0;
  int side = 0;  // 2R + 1
  bool holds = false;
  SeriesTrunc torus, full;
};
TorusDominationReport torus_domination_check(const LatticeSpec& spec,
                                             const Rat& lambda, int R,
                                             int n_max,
                                             const EnumConfig& cfg = {});

// One- and two-edge diagrammatic bounds at a fixed rational z, with every
// truncation tail bounded rigorously: upper bounds on the left sides against
// lower bounds on the right sides, so `holds` is a certificate.
// One- and two-edge correction bounds evaluated as truncations.  Both sides
// are partial sums: lhs*_partial runs through order m_max and lhs*_tail is a
// geometric bound on everything cut; rhs*_partial uses walk tables through
// order m_max + 1 and so underestimates the true right side.  The one-edge
// bound is an equality once both sides are summed in full (each closed walk
// is a neighbour-ending walk plus one edge), so margin1 comes entirely from
// the extra table order and the certified flags, which charge the whole lhs
// tail against the partial right side, are strictly harder than the bound
// itself.
struct DiagBoundReport {
  Rat z;
  int m_max = 0;
  Rat lhs1_partial, lhs1_tail;  // sum_x Pi^{(1)} truncation and its tail
  Rat rhs1_partial;             // z |Omega| max_x H(x), tables to m_max + 1
  Rat margin1;                  // rhs1_partial - lhs1_partial
  bool n1_holds = false;        // margin1 >= 0
  bool n1_certified = false;    // rhs1_partial >= lhs1_partial + lhs1_tail
  Rat lhs2_partial, lhs2_tail;
  Rat rhs2_partial;             // ||H||_inf * ||G*H||_inf over the tables
  Rat margin2;
  bool n2_holds = false;
  bool n2_certified = false;
  Rat cosine_identity;          // sum_x (1 - cos k.x) Pi^{(1)}(x), must be 0
};
DiagBoundReport diagrammatic_bound_check(const LatticeSpec& spec, const Rat& z,
                                         int m_max, const EnumConfig& cfg = {});

// Simple-random-walk reference integrals over [-pi,pi]^d / (2pi)^d with
// Dhat(k) = (1/d) sum_j cos k_j: returnIntegral = int 1/(1-Dhat),
// intersectionIntegral = int 1/(1-Dhat)^2, greenValue = the Green function at
// the origin (the return integral) together with the return probability.
enum class SrwTask { returnIntegral, intersectionIntegral, greenValue };

struct SrwResult {
  int d = 0;
  SrwTask task = SrwTask::returnIntegral;
  bool divergent = false;            // classification for low d; no value
  Real value{0};
  Real error_estimate{0};
  Real return_probability{0};        // 1 - 1/value, return tasks only
  std::vector<double> grid_values;   // successive midpoint refinements
};
SrwResult srw_reference(int d, SrwTask task);

}  // namespace sawlab
