#pragma once

#include <cstdint>

namespace blockrec {

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

// Wilson score interval for a binomial proportion, clamped to [0, 1].
// Throws std::invalid_argument unless 0 <= successes <= trials and trials >= 1.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

struct ErrorEstimate {
  std::uint64_t successes = 0;  // trials in which the event occurred
  std::uint64_t trials = 0;
  double rate = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;

  double half_width() const { return 0.5 * (ci_high - ci_low); }
};

// 95% Wilson interval.
ErrorEstimate make_estimate(std::uint64_t successes, std::uint64_t trials);

}  // namespace blockrec
