#ifndef ORRLAB_LOGSPACE_HPP
#define ORRLAB_LOGSPACE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace orrlab {

constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without leaving log space.
inline double log_add(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// Streaming log-sum-exp accumulator for norm sums whose terms overflow
// doubles when exponentiated naively.
class LogSumAccumulator {
 public:
  void add(double log_term) {
    if (log_term == kLogZero) return;
    if (log_term > max_) {
      if (max_ != kLogZero) sum_ *= std::exp(max_ - log_term);
      max_ = log_term;
    }
    sum_ += std::exp(log_term - max_);
  }

  bool empty() const { return max_ == kLogZero; }

  double log_sum() const {
    if (empty()) return kLogZero;
    return max_ + std::log(sum_);
  }

 private:
  double max_ = kLogZero;
  double sum_ = 0.0;
};

}  // namespace orrlab

#endif
