#pragma once

namespace kinsim {

// Uniform grid on the periodic strip [-L,L] x [0,1]. Samples live at cell
// centers, so v_j is never exactly 0 or 1.
struct Grid {
  double half_length = 1.0;  // L
  int nx = 4;
  int nv = 4;

  Grid() = default;
  Grid(double L, int nx_, int nv_);

  double dx() const { return 2.0 * half_length / nx; }
  double dv() const { return 1.0 / nv; }
  double x_center(int i) const { return -half_length + (i + 0.5) * dx(); }
  double v_center(int j) const { return (j + 0.5) * dv(); }

  bool operator==(const Grid&) const = default;
};

}  // namespace kinsim
