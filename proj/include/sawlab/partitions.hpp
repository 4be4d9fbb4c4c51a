#pragma once

#include "sawlab/arith.hpp"

#include <vector>

namespace sawlab {

// P_D(0..amax): number of partitions of A into distinct positive parts
std::vector<Int> distinct_partitions(int amax);

// log P_D(A) / (pi * sqrt(A/3)); approaches 1 from below as A grows
Real distinct_partition_log_ratio(int A, int precision_bits = 106);

}  // namespace sawlab
