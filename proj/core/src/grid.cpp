#include "bsq/grid.hpp"

#include <stdexcept>
#include <string>

namespace bsq {

Grid Grid::make(int n) {
  if (n < 8 || n % 2 != 0) {
    throw std::invalid_argument("Grid: N must be even and >= 8, got " +
                                std::to_string(n));
  }
  Grid g;
  g.n = n;
  g.dealias_cutoff = n / 3;
  return g;
}

}  // namespace bsq
