#include "kinsim/cone.hpp"

#include <algorithm>
#include <cmath>

#include "kinsim/errors.hpp"
#include "kinsim/numerics.hpp"

namespace kinsim {

void isotonic_fit(std::span<const double> y, std::span<double> out) {
  const int n = static_cast<int>(y.size());
  // block sums carry a compensation term so that repeated merging does not
  // accumulate rounding; the column means then telescope to rounding level
  struct Block {
    int start;
    int count;
    double sum;
    double comp;
    double mean;

    void accumulate(double x) {
      const double s = sum + x;
      if (std::abs(sum) >= std::abs(x)) {
        comp += (sum - s) + x;
      } else {
        comp += (x - s) + sum;
      }
      sum = s;
    }
  };
  std::vector<Block> stack;
  stack.reserve(n);
  for (int i = 0; i < n; ++i) {
    Block b{i, 1, y[i], 0.0, y[i]};
    // back-merge while the previous block mean violates monotonicity
    while (!stack.empty() && stack.back().mean > b.mean) {
      const Block& p = stack.back();
      b.start = p.start;
      b.count += p.count;
      b.accumulate(p.sum);
      b.accumulate(p.comp);
      b.mean = (b.sum + b.comp) / b.count;
      stack.pop_back();
    }
    stack.push_back(b);
  }
  for (const Block& b : stack) {
    for (int i = b.start; i < b.start + b.count; ++i) out[i] = b.mean;
  }
}

double resolve_tau(std::span<const double> values, double tau_flat) {
  if (tau_flat >= 0.0) return tau_flat;
  double lo = values.empty() ? 0.0 : values[0];
  double hi = lo;
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return 1e-10 * (hi - lo);
}

VColumn project_monotone(const VColumn& y) {
  VColumn out{std::vector<double>(y.values.size()), y.dv};
  isotonic_fit(y.values, out.values);
  return out;
}

std::pair<VColumn, VColumn> moreau_split(const VColumn& y) {
  VColumn yk = project_monotone(y);
  VColumn yn{std::vector<double>(y.values.size()), y.dv};
  for (size_t j = 0; j < y.values.size(); ++j) yn.values[j] = y.values[j] - yk.values[j];
  return {std::move(yk), std::move(yn)};
}

namespace {

void scan_flat_blocks(std::span<const double> v, double tau, bool include_singletons,
                      std::vector<FlatBlock>& blocks) {
  const int n = static_cast<int>(v.size());
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && v[j + 1] - v[j] <= tau) ++j;
    if (j > i || include_singletons) blocks.push_back({i, j + 1});
    i = j + 1;
  }
}

void check_state_monotone(std::span<const double> v, double tau) {
  for (size_t j = 0; j + 1 < v.size(); ++j) {
    if (v[j + 1] - v[j] < -tau) {
      throw InvalidStateError("project_tangent: state column decreases beyond tau_flat");
    }
  }
}

void project_tangent_span(std::span<const double> state, std::span<const double> g, double tau,
                          std::span<double> out) {
  check_state_monotone(state, tau);
  std::copy(g.begin(), g.end(), out.begin());
  const int n = static_cast<int>(state.size());
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && state[j + 1] - state[j] <= tau) ++j;
    if (j > i) {
      isotonic_fit(g.subspan(i, j - i + 1), out.subspan(i, j - i + 1));
    }
    i = j + 1;
  }
}

}  // namespace

FlatBlockPartition flat_blocks(const VColumn& y, double tau_flat, bool include_singletons) {
  FlatBlockPartition part;
  part.tolerance = resolve_tau(y.values, tau_flat);
  scan_flat_blocks(y.values, part.tolerance, include_singletons, part.blocks);
  return part;
}

VColumn project_tangent(const VColumn& y_state, const VColumn& g, double tau_flat) {
  const double tau = resolve_tau(y_state.values, tau_flat);
  VColumn out{std::vector<double>(g.values.size()), g.dv};
  project_tangent_span(y_state.values, g.values, tau, out.values);
  return out;
}

ColumnInteraction interaction_column(const VColumn& y_state, const VColumn& transport,
                                     double tau_flat) {
  VColumn neg{std::vector<double>(transport.values.size()), transport.dv};
  for (size_t j = 0; j < transport.values.size(); ++j) neg.values[j] = -transport.values[j];
  ColumnInteraction r;
  r.minimizer = project_tangent(y_state, neg, tau_flat);
  KahanSum acc;
  for (size_t j = 0; j < transport.values.size(); ++j) {
    const double d = r.minimizer.values[j] + transport.values[j];
    acc.add(d * d);
  }
  r.value = transport.dv * acc.value();
  return r;
}

InteractionProfile interaction_field(const KineticField& Y, const FluxModel& flux,
                                     double tau_flat) {
  const Grid& g = Y.grid;
  std::vector<double> speeds(g.nv);
  for (int j = 0; j < g.nv; ++j) speeds[j] = flux.deriv(g.v_center(j));

  InteractionProfile out;
  out.profile.assign(g.nx, 0.0);
  const double inv2dx = 1.0 / (2.0 * g.dx());
  std::vector<double> trans(g.nv), minimizer(g.nv);
  for (int i = 0; i < g.nx; ++i) {
    const int ip = (i + 1) % g.nx;
    const int im = (i + g.nx - 1) % g.nx;
    auto state = Y.column(i);
    for (int j = 0; j < g.nv; ++j) {
      trans[j] = -speeds[j] * (Y.at(ip, j) - Y.at(im, j)) * inv2dx;  // -f' D_x Y
    }
    const double tau = resolve_tau(state, tau_flat);
    project_tangent_span(state, trans, tau, minimizer);
    KahanSum acc;
    for (int j = 0; j < g.nv; ++j) {
      const double d = minimizer[j] - trans[j];  // minimizer + f' D_x Y
      acc.add(d * d);
    }
    out.profile[i] = g.dv() * acc.value();
  }
  out.total = g.dx() * stable_sum(out.profile);
  return out;
}

}  // namespace kinsim
