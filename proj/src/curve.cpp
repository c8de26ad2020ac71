#include "mcvd/curve.hpp"

#include <cmath>
#include <sstream>

namespace mcvd {

void validate(const TimeGrid& grid) {
  if (!(grid.dt > 0.0) || !std::isfinite(grid.dt) || grid.n_steps < 1) {
    std::ostringstream os;
    os << "invalid time grid: dt = " << grid.dt
       << ", n_steps = " << grid.n_steps << " (need dt > 0 and n_steps >= 1)";
    throw GridError(os.str());
  }
}

}  // namespace mcvd
