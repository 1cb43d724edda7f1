#include "blockrec/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blockrec {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("Wilson interval needs at least one trial");
  if (successes > trials) throw std::invalid_argument("successes exceed trials");
  const auto n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  Interval out{std::clamp(center - half, 0.0, 1.0), std::clamp(center + half, 0.0, 1.0)};
  // Keep the point estimate inside the interval despite rounding at 0 and 1.
  out.low = std::min(out.low, phat);
  out.high = std::max(out.high, phat);
  return out;
}

ErrorEstimate make_estimate(std::uint64_t successes, std::uint64_t trials) {
  const auto ci = wilson_interval(successes, trials);
  ErrorEstimate e;
  e.successes = successes;
  e.trials = trials;
  e.rate = static_cast<double>(successes) / static_cast<double>(trials);
  e.ci_low = ci.low;
  e.ci_high = ci.high;
  return e;
}

}  // namespace blockrec
