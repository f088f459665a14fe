#pragma once

#include <cmath>
#include <cstddef>

namespace halluc {

/// Weights of a distribution must sum to one within this tolerance.
inline constexpr double kNormTol = 1e-12;
/// Default slack for comparing derived quantities (constraint checks, capacities).
inline constexpr double kCompareTol = 1e-9;

/// Neumaier-compensated running sum. Used wherever probability mass is
/// accumulated so that identities like hall + p[T] = 1 hold to the last bits.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <typename Range>
double compensated_sum(const Range& values) {
  CompensatedSum acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

/// x * log(1/x) with the 0 * log(1/0) = 0 convention.
inline double entropy_term(double x) { return x > 0.0 ? -x * std::log(x) : 0.0; }

}  // namespace halluc
