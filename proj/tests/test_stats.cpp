#include <doctest.h>

#include <vector>

#include "tatami/error.hpp"
#include "tatami/stats.hpp"

using namespace tatami;
using doctest::Approx;

// Reference survival values computed once with an independent implementation
// (scipy.stats.chi2.sf / chi2_contingency, scipy 1.15.3) and frozen here.
TEST_CASE("chi-square survival function matches frozen references") {
  CHECK(chi_square_p(0.0, 1) == Approx(1.0).epsilon(1e-12));
  CHECK(chi_square_p(1.0, 1) == Approx(0.317310507862911).epsilon(1e-10));
  CHECK(chi_square_p(10.828, 1) == Approx(0.000999765719583092).epsilon(1e-10));
  CHECK(chi_square_p(3.0, 2) == Approx(0.22313016014843).epsilon(1e-10));
  CHECK(chi_square_p(7.5, 3) == Approx(0.0575584519726364).epsilon(1e-10));
  CHECK(chi_square_p(22.458, 6) == Approx(0.000999893003657168).epsilon(1e-10));
  CHECK(chi_square_p(5.0, 4) == Approx(0.287297495183646).epsilon(1e-10));
  CHECK(chi_square_p(100.0, 7) == Approx(1.07879796717028e-18).epsilon(1e-8));
  CHECK(chi_square_p(135.807, 127) == Approx(0.280307048759875).epsilon(1e-10));
  CHECK(chi_square_p(1.2, 11) == Approx(0.999873664178228).epsilon(1e-10));
  CHECK_THROWS_AS(chi_square_p(1.0, 0), Error);
}

TEST_CASE("uniformity reduces to the survival function") {
  std::vector<uint64_t> counts = {520, 480};
  UniformityTest u = uniformity_chi_square(counts);
  CHECK(u.total == 1000);
  CHECK(u.dof == 1);
  CHECK(u.statistic == Approx(1.6).epsilon(1e-12));
  CHECK(u.p == Approx(chi_square_p(1.6, 1)).epsilon(1e-12));

  std::vector<uint64_t> wide = {100, 120, 95, 85, 105, 110, 90, 95};
  u = uniformity_chi_square(wide);
  CHECK(u.dof == 7);
  CHECK(u.statistic == Approx(9.0).epsilon(1e-12));
  CHECK(u.p == Approx(chi_square_p(9.0, 7)).epsilon(1e-12));

  std::vector<uint64_t> perfect = {250, 250, 250, 250};
  u = uniformity_chi_square(perfect);
  CHECK(u.statistic == Approx(0.0));
  CHECK(u.p == Approx(1.0));
}

TEST_CASE("uniformity handles degenerate inputs") {
  std::vector<uint64_t> single = {42};
  UniformityTest u = uniformity_chi_square(single);
  CHECK(u.dof == 0);
  CHECK(u.p == Approx(1.0));

  std::vector<uint64_t> empty_counts = {0, 0, 0};
  u = uniformity_chi_square(empty_counts);
  CHECK(u.total == 0);
  CHECK(u.p == Approx(1.0));
}

TEST_CASE("two-sample contingency matches frozen references") {
  std::vector<uint64_t> a = {520, 480};
  std::vector<uint64_t> b = {466, 534};
  TwoSampleTest t = two_sample_chi_square(a, b);
  CHECK(t.dof == 1);
  CHECK(t.statistic == Approx(5.833143296086033).epsilon(1e-10));
  CHECK(t.p == Approx(0.015726998476583653).epsilon(1e-9));

  std::vector<uint64_t> a8 = {100, 120, 95, 85, 105, 110, 90, 95};
  std::vector<uint64_t> b8 = {90, 100, 105, 115, 95, 100, 100, 95};
  t = two_sample_chi_square(a8, b8);
  CHECK(t.dof == 7);
  CHECK(t.statistic == Approx(8.847003873319663).epsilon(1e-10));
  CHECK(t.p == Approx(0.2638280456673501).epsilon(1e-9));
}

TEST_CASE("two-sample drops empty pooled bins from the dof") {
  std::vector<uint64_t> a = {10, 0, 10};
  std::vector<uint64_t> b = {12, 0, 8};
  TwoSampleTest t = two_sample_chi_square(a, b);
  CHECK(t.dof == 1);

  std::vector<uint64_t> empty_side = {0, 0};
  std::vector<uint64_t> other = {5, 5};
  t = two_sample_chi_square(empty_side, other);
  CHECK(t.dof == 0);
  CHECK(t.p == Approx(1.0));

  std::vector<uint64_t> equal_a = {50, 50};
  t = two_sample_chi_square(equal_a, equal_a);
  CHECK(t.statistic == Approx(0.0));
  CHECK(t.p == Approx(1.0));
}
