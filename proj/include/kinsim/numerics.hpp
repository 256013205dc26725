#pragma once

#include <cmath>
#include <span>

namespace kinsim {

// Neumaier-compensated accumulator. Field-sized reductions feed invariant
// checks at the 1e-12 level, which plain summation noise would swamp.
class KahanSum {
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

double stable_sum(std::span<const double> v);
double stable_dot(std::span<const double> a, std::span<const double> b);

// Least-squares slope of y against x.
double ls_slope(std::span<const double> x, std::span<const double> y);

}  // namespace kinsim
