#pragma once

#include <span>
#include <string>
#include <vector>

#include "kinsim/grid.hpp"

namespace kinsim {

/// Kinetic density Y(x_i, v_j). Storage is x-major: the v-column at a fixed
/// x index is contiguous.
struct KineticField {
  Grid grid;
  double time = 0.0;
  std::vector<double> values;

  KineticField() = default;
  explicit KineticField(const Grid& g, double t = 0.0)
      : grid(g), time(t), values(static_cast<size_t>(g.nx) * g.nv, 0.0) {}

  double& at(int i, int j) { return values[static_cast<size_t>(i) * grid.nv + j]; }
  double at(int i, int j) const { return values[static_cast<size_t>(i) * grid.nv + j]; }
  std::span<double> column(int i) {
    return {values.data() + static_cast<size_t>(i) * grid.nv, static_cast<size_t>(grid.nv)};
  }
  std::span<const double> column(int i) const {
    return {values.data() + static_cast<size_t>(i) * grid.nv, static_cast<size_t>(grid.nv)};
  }
};

/// Nonnegative grid density m(x_i, v_j) of the kinetic transport equation.
struct DefectMeasure {
  Grid grid;
  double time = 0.0;
  std::vector<double> values;

  DefectMeasure() = default;
  explicit DefectMeasure(const Grid& g, double t = 0.0)
      : grid(g), time(t), values(static_cast<size_t>(g.nx) * g.nv, 0.0) {}

  double& at(int i, int j) { return values[static_cast<size_t>(i) * grid.nv + j]; }
  double at(int i, int j) const { return values[static_cast<size_t>(i) * grid.nv + j]; }

  double min_value() const;
  double top_abs_max() const;  // max_i |m(x_i, v_top)|
};

enum class Kernel { cosine_bump, plateau };
Kernel kernel_from_string(const std::string& s);
std::string to_string(Kernel k);

struct Atom {
  double weight = 0.0;
  double value = 0.0;
};
using Mixture = std::vector<Atom>;

KineticField lift_function(std::span<const double> u0, const Grid& grid);
KineticField lift_measure(const std::vector<Mixture>& per_x, const Grid& grid);
KineticField lift_measure(const Mixture& everywhere, const Grid& grid);

/// u(x_i) = sup { v : Y(x_i, v) <= lambda } on the v grid; returns the domain
/// edge 1 when the whole column is below lambda and 0 when even Y(x_i, v_0)
/// exceeds it.
std::vector<double> extract_level(const KineticField& Y, double lambda);

/// Periodic convolution of every v-slice with a discrete unit-mass kernel.
/// cosine_bump is supported on [-eps, eps]; plateau is 1 on [-eps, eps] and
/// supported on [-2 eps, 2 eps] (normalized).
KineticField mollify_x(const KineticField& Y, double epsilon, Kernel kernel);

/// m(x, v_j) = -dv * sum_{k<=j} R(x, v_k) with R = (projected - transported)/dt.
DefectMeasure defect_measure(const KineticField& transported, const KineticField& projected,
                             double dt);

// Field reductions (dx dv weighted).
double l2_squared(const KineticField& Y);
double total_mass(const KineticField& Y);
double grad_x_norm(const KineticField& Y);  // forward differences, periodic
double field_l2_distance(const KineticField& a, const KineticField& b);
bool columns_nondecreasing(const KineticField& Y, double tol = 0.0);

}  // namespace kinsim
