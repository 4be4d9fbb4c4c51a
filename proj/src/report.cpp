#include "sawlab/report.hpp"

#include <stdexcept>

namespace sawlab::report {

Json to_json(const CheckReport& r) {
  if (r.outcome != "pass" && r.outcome != "fail" && r.outcome != "inconclusive")
    throw std::logic_error("unknown outcome: " + r.outcome);
  if (!check_catalog().count(r.check_id))
    throw std::logic_error("check id not in catalog: " + r.check_id);
  if (r.outcome == "fail" && r.witnesses.empty())
    throw std::logic_error("fail report without a witness");
  Json j;
  j["check"] = r.check_id;
  j["inputs"] = r.inputs;
  j["outcome"] = r.outcome;
  j["witnesses"] = r.witnesses;
  if (r.seconds >= 0) {
    j["timing"] = Json::object();
    j["timing"]["seconds"] = r.seconds;
    j["timing"]["cached"] = r.cached;
  }
  return j;
}

const std::map<std::string, std::string>& check_catalog() {
  static const std::map<std::string, std::string> catalog{
      {"hw-chain",
       "exact integer chain linking walk, half-space and bridge counts "
       "through the unfolding map"},
      {"bridge-pair-bound",
       "sum_x b_n(x)^2 <= 2d (n+1)^2 c_{2n+1}(e1), exact integers"},
      {"mu-bracket",
       "b_n^{1/n} <= mu <= c_n^{1/n}: the connective constant sits between "
       "the bridge and walk count roots"},
      {"lace-recursion-agreement",
       "pi coefficients from explicit lace enumeration equal those solved "
       "out of the two-point recursion, exactly, with pi_1 = 0 and every "
       "pi^(N) >= 0"},
      {"susceptibility-ode",
       "coefficientwise identity d[z chi]/dz = V(z) chi(z)^2 on the "
       "truncated series, exact rationals"},
      {"hex-vertex-identity",
       "the parafermionic observable sums to zero around every vertex at "
       "the critical weight with winding phase 5/8"},
      {"hex-strip-identity",
       "cos(3pi/8) A + B + cos(pi/4) E = 1 for the strip boundary sums at "
       "the critical weight"},
      {"hex-strip-recursion",
       "bracketed strip limits satisfy the step inequality; holds or "
       "inconclusive, never violated"},
      {"grassmann-norm",
       "the boson-fermion Gaussian integral of 1 is exactly 1 "
       "(self-normalisation)"},
      {"grassmann-wick",
       "pair-correlation permanents agree with the direct permutation sum"},
      {"grassmann-ibp",
       "Gaussian integration by parts: E[phibar_a F] = sum_x C_ax "
       "E[dF/dphi_x]"},
      {"grassmann-repsaw",
       "the superintegral with (1+tau) factors equals the direct sum over "
       "self-avoiding index sequences"},
      {"grassmann-loops",
       "dropping the fermions reintroduces permutation-loop backgrounds; "
       "Wick route equals the combinatorial route"},
  };
  return catalog;
}

std::string int_str(const Int& v) { return v.str(); }

std::string rat_str(const Rat& v) { return v.str(); }

std::string real_str(const Real& v, int digits) {
  return v.str(digits, std::ios_base::scientific);
}

}  // namespace sawlab::report
