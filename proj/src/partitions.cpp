#include "sawlab/partitions.hpp"

#include <stdexcept>

namespace sawlab {

std::vector<Int> distinct_partitions(int amax) {
  if (amax < 0) throw std::invalid_argument("amax must be nonnegative");
  std::vector<Int> dp(amax + 1, Int(0));
  dp[0] = 1;
  // product over k of (1 + x^k), one part size at a time
  for (int k = 1; k <= amax; ++k)
    for (int a = amax; a >= k; --a) dp[a] += dp[a - k];
  return dp;
}

Real distinct_partition_log_ratio(int A, int precision_bits) {
  if (A < 1) throw std::invalid_argument("A must be positive");
  set_precision_bits(precision_bits);
  Real pd(distinct_partitions(A)[A]);
  return log(pd) / (real_pi() * sqrt(Real(A) / 3));
}

}  // namespace sawlab
