#pragma once

#include <cmath>
#include <cstddef>

namespace tvlm {

// Neumaier compensated summation; error O(eps) independent of length.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
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

template <typename It>
double neumaier_sum(It begin, It end) {
  Accumulator acc;
  for (It it = begin; it != end; ++it) acc.add(*it);
  return acc.value();
}

}  // namespace tvlm
