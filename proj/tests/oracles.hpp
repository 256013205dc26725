#pragma once

// Test-only oracles, independent of the library's algorithm choices.

#include <cmath>
#include <limits>
#include <vector>

namespace kinsim::testing {

// Brute-force isotonic projection: enumerate every partition of the index
// range into consecutive blocks (2^(n-1) of them), replace each block by its
// mean, keep the feasible candidate (non-decreasing block means) with the
// smallest squared distance. The projection is one of the candidates, so the
// best feasible candidate is the projection.
inline std::vector<double> brute_force_monotone_projection(const std::vector<double>& y) {
  const int n = static_cast<int>(y.size());
  std::vector<double> best;
  double best_sse = std::numeric_limits<double>::infinity();
  const unsigned long masks = 1ul << (n - 1);
  std::vector<double> cand(n);
  for (unsigned long mask = 0; mask < masks; ++mask) {
    int start = 0;
    bool feasible = true;
    double prev_mean = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n && feasible; ++i) {
      const bool boundary = i == n - 1 || (mask >> i) & 1ul;
      if (!boundary) continue;
      double sum = 0.0;
      for (int k = start; k <= i; ++k) sum += y[k];
      const double mean = sum / (i - start + 1);
      if (mean < prev_mean) {
        feasible = false;
        break;
      }
      for (int k = start; k <= i; ++k) cand[k] = mean;
      prev_mean = mean;
      start = i + 1;
    }
    if (!feasible) continue;
    double sse = 0.0;
    for (int k = 0; k < n; ++k) sse += (cand[k] - y[k]) * (cand[k] - y[k]);
    if (sse < best_sse) {
      best_sse = sse;
      best = cand;
    }
  }
  return best;
}

}  // namespace kinsim::testing
