#include "kinsim/grid.hpp"

#include <cmath>
#include <string>

#include "kinsim/errors.hpp"

namespace kinsim {

Grid::Grid(double L, int nx_, int nv_) : half_length(L), nx(nx_), nv(nv_) {
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw DomainError("grid: half-period L must be positive, got " + std::to_string(L));
  }
  if (nx < 4 || nv < 4) {
    throw DomainError("grid: need nx >= 4 and nv >= 4, got nx=" + std::to_string(nx) +
                      " nv=" + std::to_string(nv));
  }
}

}  // namespace kinsim
