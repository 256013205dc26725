#include "kinsim/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kinsim/errors.hpp"
#include "kinsim/numerics.hpp"

namespace kinsim {

double DefectMeasure::min_value() const {
  double m = values.empty() ? 0.0 : values[0];
  for (double v : values) m = std::min(m, v);
  return m;
}

double DefectMeasure::top_abs_max() const {
  double m = 0.0;
  for (int i = 0; i < grid.nx; ++i) m = std::max(m, std::abs(at(i, grid.nv - 1)));
  return m;
}

Kernel kernel_from_string(const std::string& s) {
  if (s == "cosine_bump") return Kernel::cosine_bump;
  if (s == "plateau") return Kernel::plateau;
  throw ConfigError("kernel: unknown kernel '" + s + "'");
}

std::string to_string(Kernel k) {
  return k == Kernel::cosine_bump ? "cosine_bump" : "plateau";
}

KineticField lift_function(std::span<const double> u0, const Grid& grid) {
  if (static_cast<int>(u0.size()) != grid.nx) {
    throw ShapeError("lift_function: u0 has " + std::to_string(u0.size()) +
                     " entries, grid wants " + std::to_string(grid.nx));
  }
  for (double u : u0) {
    if (!(u >= 0.0 && u <= 1.0)) {
      throw DomainError("lift_function: initial values must lie in [0,1]");
    }
  }
  KineticField Y(grid);
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.nv; ++j) {
      Y.at(i, j) = grid.v_center(j) >= u0[i] ? 1.0 : 0.0;
    }
  }
  return Y;
}

namespace {

void check_mixture(const Mixture& mix) {
  double total = 0.0;
  for (const Atom& a : mix) {
    if (a.weight < 0.0) throw DomainError("lift_measure: negative atom weight");
    if (!(a.value >= 0.0 && a.value <= 1.0)) {
      throw DomainError("lift_measure: atom values must lie in [0,1]");
    }
    total += a.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw DomainError("lift_measure: atom weights sum to " + std::to_string(total) +
                      ", expected 1");
  }
}

void fill_cdf_column(const Mixture& mix, const Grid& grid, std::span<double> col) {
  // right-continuous CDF sampled at cell centers; prefix sums keep the
  // column non-decreasing as stored
  std::vector<const Atom*> sorted;
  sorted.reserve(mix.size());
  for (const Atom& a : mix) sorted.push_back(&a);
  std::sort(sorted.begin(), sorted.end(),
            [](const Atom* a, const Atom* b) { return a->value < b->value; });
  size_t k = 0;
  double acc = 0.0;
  for (int j = 0; j < grid.nv; ++j) {
    const double v = grid.v_center(j);
    while (k < sorted.size() && sorted[k]->value <= v) acc += sorted[k++]->weight;
    col[j] = acc;
  }
}

}  // namespace

KineticField lift_measure(const std::vector<Mixture>& per_x, const Grid& grid) {
  if (static_cast<int>(per_x.size()) != grid.nx) {
    throw ShapeError("lift_measure: need one mixture per x cell");
  }
  KineticField Y(grid);
  for (int i = 0; i < grid.nx; ++i) {
    check_mixture(per_x[i]);
    fill_cdf_column(per_x[i], grid, Y.column(i));
  }
  return Y;
}

KineticField lift_measure(const Mixture& everywhere, const Grid& grid) {
  check_mixture(everywhere);
  KineticField Y(grid);
  std::vector<double> col(grid.nv);
  fill_cdf_column(everywhere, grid, col);
  for (int i = 0; i < grid.nx; ++i) {
    std::copy(col.begin(), col.end(), Y.column(i).begin());
  }
  return Y;
}

std::vector<double> extract_level(const KineticField& Y, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw DomainError("extract_level: lambda must lie in (0,1)");
  }
  const Grid& g = Y.grid;
  std::vector<double> u(g.nx, 0.0);
  for (int i = 0; i < g.nx; ++i) {
    u[i] = 0.0;  // Y(x, v_0) already above lambda
    for (int j = g.nv - 1; j >= 0; --j) {
      if (Y.at(i, j) <= lambda) {
        u[i] = (j == g.nv - 1) ? 1.0 : g.v_center(j);
        break;
      }
    }
  }
  return u;
}

KineticField mollify_x(const KineticField& Y, double epsilon, Kernel kernel) {
  const Grid& g = Y.grid;
  const double dx = g.dx();
  if (epsilon < 2.0 * dx) {
    throw ResolutionError("mollify_x: kernel under-resolved, epsilon < 2 dx");
  }
  if (!(epsilon < g.half_length / 8.0)) {
    throw DomainError("mollify_x: epsilon must be smaller than L/8");
  }

  const double radius = kernel == Kernel::cosine_bump ? epsilon : 2.0 * epsilon;
  const int m = static_cast<int>(std::floor(radius / dx + 1e-12));
  std::vector<double> w(2 * m + 1, 0.0);
  for (int k = -m; k <= m; ++k) {
    const double x = std::abs(k * dx);
    double s = 0.0;
    if (kernel == Kernel::cosine_bump) {
      if (x <= epsilon) s = 1.0 + std::cos(M_PI * x / epsilon);
    } else {
      if (x <= epsilon) {
        s = 1.0;
      } else if (x < 2.0 * epsilon) {
        s = 0.5 * (1.0 + std::cos(M_PI * (x - epsilon) / epsilon));
      }
    }
    w[k + m] = s;
  }
  double total = 0.0;
  for (double s : w) total += s;
  for (double& s : w) s /= total;

  KineticField out(g, Y.time);
  std::vector<double> acc(g.nv);
  for (int i = 0; i < g.nx; ++i) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (int k = -m; k <= m; ++k) {
      const int src = ((i - k) % g.nx + g.nx) % g.nx;
      const double wk = w[k + m];
      auto col = Y.column(src);
      for (int j = 0; j < g.nv; ++j) acc[j] += wk * col[j];
    }
    std::copy(acc.begin(), acc.end(), out.column(i).begin());
  }
  return out;
}

DefectMeasure defect_measure(const KineticField& transported, const KineticField& projected,
                             double dt) {
  if (!(transported.grid == projected.grid)) {
    throw ShapeError("defect_measure: fields live on different grids");
  }
  if (!(dt > 0.0)) throw DomainError("defect_measure: dt must be positive");
  const Grid& g = transported.grid;
  DefectMeasure m(g, projected.time);
  const double dv = g.dv();
  for (int i = 0; i < g.nx; ++i) {
    // compensated prefix sums: the residuals carry a 1/dt factor and the
    // v-top entry must cancel to rounding level
    KahanSum run;
    for (int j = 0; j < g.nv; ++j) {
      run.add((projected.at(i, j) - transported.at(i, j)) / dt);
      m.at(i, j) = -dv * run.value();
    }
  }
  return m;
}

double l2_squared(const KineticField& Y) {
  KahanSum acc;
  for (double v : Y.values) acc.add(v * v);
  return Y.grid.dx() * Y.grid.dv() * acc.value();
}

double total_mass(const KineticField& Y) {
  return Y.grid.dx() * Y.grid.dv() * stable_sum(Y.values);
}

double grad_x_norm(const KineticField& Y) {
  const Grid& g = Y.grid;
  const double inv_dx = 1.0 / g.dx();
  KahanSum acc;
  for (int i = 0; i < g.nx; ++i) {
    const int ip = (i + 1) % g.nx;
    for (int j = 0; j < g.nv; ++j) {
      const double d = (Y.at(ip, j) - Y.at(i, j)) * inv_dx;
      acc.add(d * d);
    }
  }
  return std::sqrt(g.dx() * g.dv() * acc.value());
}

double field_l2_distance(const KineticField& a, const KineticField& b) {
  if (!(a.grid == b.grid)) throw ShapeError("field_l2_distance: grid mismatch");
  KahanSum acc;
  for (size_t k = 0; k < a.values.size(); ++k) {
    const double d = a.values[k] - b.values[k];
    acc.add(d * d);
  }
  return std::sqrt(a.grid.dx() * a.grid.dv() * acc.value());
}

bool columns_nondecreasing(const KineticField& Y, double tol) {
  const Grid& g = Y.grid;
  for (int i = 0; i < g.nx; ++i) {
    auto col = Y.column(i);
    for (int j = 0; j + 1 < g.nv; ++j) {
      if (col[j + 1] - col[j] < -tol) return false;
    }
  }
  return true;
}

}  // namespace kinsim
