#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace blockrec {

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Binomial(trials, prob) probability mass for k = 0..trials, written into
// `pmf`. The mode is evaluated in the log domain and the remaining terms by
// the ratio recurrence outward, so tails underflow gracefully.
void binomial_pmf(std::uint64_t trials, double prob, std::vector<double>& pmf);

}  // namespace blockrec
