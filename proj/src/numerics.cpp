#include "kinsim/numerics.hpp"

#include <cstddef>

namespace kinsim {

double stable_sum(std::span<const double> v) {
  KahanSum acc;
  for (double x : v) acc.add(x);
  return acc.value();
}

double stable_dot(std::span<const double> a, std::span<const double> b) {
  KahanSum acc;
  const size_t n = a.size() < b.size() ? a.size() : b.size();
  for (size_t i = 0; i < n; ++i) acc.add(a[i] * b[i]);
  return acc.value();
}

double ls_slope(std::span<const double> x, std::span<const double> y) {
  const size_t n = x.size();
  double xm = 0.0, ym = 0.0;
  for (size_t i = 0; i < n; ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= n;
  ym /= n;
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < n; ++i) {
    num += (x[i] - xm) * (y[i] - ym);
    den += (x[i] - xm) * (x[i] - xm);
  }
  return num / den;
}

}  // namespace kinsim
