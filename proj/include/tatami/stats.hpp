#pragma once

#include <cstdint>
#include <span>

namespace tatami {

// Upper-tail probability P(X >= statistic) for chi-square with dof degrees.
double chi_square_p(double statistic, int dof);

struct UniformityTest {
  double statistic = 0.0;
  double p = 1.0;
  int dof = 0;
  uint64_t total = 0;
};

// Goodness of fit of observed bin counts against the uniform distribution.
UniformityTest uniformity_chi_square(std::span<const uint64_t> counts);

struct TwoSampleTest {
  double statistic = 0.0;
  double p = 1.0;
  int dof = 0;
};

// 2 x q contingency test that both count vectors share one distribution.
// Bins with zero pooled count are dropped from the dof.
TwoSampleTest two_sample_chi_square(std::span<const uint64_t> a, std::span<const uint64_t> b);

}  // namespace tatami
