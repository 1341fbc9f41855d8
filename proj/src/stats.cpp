#include "tatami/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include "tatami/error.hpp"

namespace tatami {

double chi_square_p(double statistic, int dof) {
  if (dof < 1) fail(Errc::ValueError, "chi-square needs dof >= 1");
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

UniformityTest uniformity_chi_square(std::span<const uint64_t> counts) {
  UniformityTest out;
  const size_t q = counts.size();
  for (uint64_t c : counts) out.total += c;
  out.dof = q >= 2 ? static_cast<int>(q) - 1 : 0;
  if (out.dof == 0 || out.total == 0) return out;
  const double expected = static_cast<double>(out.total) / static_cast<double>(q);
  for (uint64_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    out.statistic += d * d / expected;
  }
  out.p = chi_square_p(out.statistic, out.dof);
  return out;
}

TwoSampleTest two_sample_chi_square(std::span<const uint64_t> a, std::span<const uint64_t> b) {
  if (a.size() != b.size()) fail(Errc::ValueError, "two-sample bin counts differ in length");
  TwoSampleTest out;
  double ta = 0, tb = 0;
  size_t live = 0;
  for (size_t j = 0; j < a.size(); ++j) {
    ta += static_cast<double>(a[j]);
    tb += static_cast<double>(b[j]);
    if (a[j] + b[j] > 0) ++live;
  }
  const double n = ta + tb;
  if (live < 2 || ta == 0 || tb == 0) return out;  // nothing testable, dof stays 0
  out.dof = static_cast<int>(live) - 1;
  for (size_t j = 0; j < a.size(); ++j) {
    const double col = static_cast<double>(a[j] + b[j]);
    if (col == 0) continue;
    const double ea = ta * col / n;
    const double eb = tb * col / n;
    const double da = static_cast<double>(a[j]) - ea;
    const double db = static_cast<double>(b[j]) - eb;
    out.statistic += da * da / ea + db * db / eb;
  }
  out.p = chi_square_p(out.statistic, out.dof);
  return out;
}

}  // namespace tatami
