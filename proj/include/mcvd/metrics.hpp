#pragma once

#include <string>
#include <vector>

#include "mcvd/curve.hpp"
#include "mcvd/geometry.hpp"
#include "mcvd/montecarlo.hpp"

namespace mcvd {

/// Error metrics between two cumulative ("fraction of molecules") curves
/// sampled on one shared grid.
struct CurveComparison {
  double rms = 0.0;
  double max_abs = 0.0;
  double pearson = 0.0;
  Eigen::Index n_points = 0;
};

/// RMS, max-abs and Pearson correlation of the cumulative curves.
/// Throws GridError when the grids differ; resample first.
CurveComparison compare(const HittingCurve& a, const HittingCurve& b);

/// Linear interpolation of the cumulative curve onto a new grid (step
/// masses re-differenced). The target horizon must not exceed the source
/// horizon; resampling onto the curve's own grid is the identity.
HittingCurve resample(const HittingCurve& curve, const TimeGrid& grid);

enum class ModelKind { Recursive, ClosedForm, Approx };

struct SweepRow {
  double angle_deg = 0.0;
  bool ok = false;
  std::string error;
  CurveComparison rx1;
  CurveComparison rx2;
};

/// Model-versus-simulation error at each separation angle. For every angle
/// the planar spec is rebuilt, the selected model is evaluated on
/// model_grid and compared against a Monte Carlo run binned onto the same
/// grid. The oracle seed is reused across angles (common random numbers),
/// so cross-angle trends are not masked by sampling noise. Per-angle
/// geometry failures are reported in the row instead of aborting the sweep.
std::vector<SweepRow> angle_sweep(const PlanarSpec2Rx& spec,
                                  const std::vector<double>& angles_rad,
                                  ModelKind model, const SimConfig& oracle,
                                  const TimeGrid& model_grid);

}  // namespace mcvd
