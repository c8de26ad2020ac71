#include "mcvd/metrics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mcvd/closed_form.hpp"
#include "mcvd/recursive.hpp"

namespace mcvd {

CurveComparison compare(const HittingCurve& a, const HittingCurve& b) {
  if (!(a.grid == b.grid)) {
    std::ostringstream os;
    os << "grid mismatch: (dt = " << a.grid.dt << ", n = " << a.grid.n_steps
       << ") vs (dt = " << b.grid.dt << ", n = " << b.grid.n_steps << ")";
    throw GridError(os.str());
  }
  const Eigen::ArrayXd diff = a.cumulative - b.cumulative;
  CurveComparison out;
  out.n_points = a.grid.n_steps;
  out.rms = std::sqrt(diff.square().mean());
  out.max_abs = diff.abs().maxCoeff();
  const double mean_a = a.cumulative.mean();
  const double mean_b = b.cumulative.mean();
  const Eigen::ArrayXd da = a.cumulative - mean_a;
  const Eigen::ArrayXd db = b.cumulative - mean_b;
  const double var_a = da.square().sum();
  const double var_b = db.square().sum();
  if (var_a == 0.0 && var_b == 0.0)
    out.pearson = out.max_abs == 0.0 ? 1.0
                                     : std::numeric_limits<double>::quiet_NaN();
  else if (var_a == 0.0 || var_b == 0.0)
    out.pearson = std::numeric_limits<double>::quiet_NaN();
  else
    out.pearson = (da * db).sum() / std::sqrt(var_a * var_b);
  return out;
}

HittingCurve resample(const HittingCurve& curve, const TimeGrid& grid) {
  validate(grid);
  if (curve.grid == grid) return curve;

  const Eigen::Index n_src = curve.grid.n_steps;
  const double ratio = grid.dt / curve.grid.dt;
  // Cumulative value at source node index j (node 0 is t = 0).
  const auto node = [&](Eigen::Index j) {
    return j <= 0 ? 0.0 : curve.cumulative[std::min(j, n_src) - 1];
  };

  HittingCurve out;
  out.grid = grid;
  out.step_prob.resize(grid.n_steps);
  out.cumulative.resize(grid.n_steps);
  double prev = 0.0;
  for (Eigen::Index k = 0; k < grid.n_steps; ++k) {
    double u = static_cast<double>(k + 1) * ratio;
    // Snap to the nearest source node to keep shared endpoints exact.
    const double nearest = std::round(u);
    if (std::abs(u - nearest) < 1e-9 * std::max(1.0, std::abs(u))) u = nearest;
    if (u > static_cast<double>(n_src)) {
      std::ostringstream os;
      os << "resample target t = " << grid.t_end(k)
         << " exceeds source horizon " << curve.grid.horizon();
      throw GridError(os.str());
    }
    const auto j = static_cast<Eigen::Index>(std::floor(u));
    const double frac = u - static_cast<double>(j);
    const double value =
        frac == 0.0 ? node(j) : node(j) + frac * (node(j + 1) - node(j));
    out.step_prob[k] = value - prev;
    out.cumulative[k] = value;
    prev = value;
  }
  return out;
}

std::vector<SweepRow> angle_sweep(const PlanarSpec2Rx& spec,
                                  const std::vector<double>& angles_rad,
                                  ModelKind model, const SimConfig& oracle,
                                  const TimeGrid& model_grid) {
  validate(model_grid);
  std::vector<SweepRow> rows;
  rows.reserve(angles_rad.size());
  for (double angle : angles_rad) {
    SweepRow row;
    row.angle_deg = angle * 180.0 / M_PI;
    try {
      PlanarSpec2Rx at_angle = spec;
      at_angle.phi = angle;
      const Topology topology = build_planar_2rx(at_angle);

      std::pair<HittingCurve, HittingCurve> curves;
      switch (model) {
        case ModelKind::Recursive:
          curves = recursive_2rx(topology, model_grid);
          break;
        case ModelKind::ClosedForm:
          curves = {closed_form_curve(build_series(topology, 0), model_grid),
                    closed_form_curve(build_series(topology, 1), model_grid)};
          break;
        case ModelKind::Approx:
          curves = {
              curve_from_cdf(
                  [&](double t) { return approx_cdf(topology, 0, t); },
                  model_grid),
              curve_from_cdf(
                  [&](double t) { return approx_cdf(topology, 1, t); },
                  model_grid)};
          break;
      }

      SimConfig mc = oracle;
      mc.diffusion = spec.diffusion;
      mc.horizon = model_grid.horizon();
      mc.curve_dt = model_grid.dt;
      const SimResult sim = simulate(topology, mc);

      row.rx1 = compare(curves.first, sim.curves[0]);
      row.rx2 = compare(curves.second, sim.curves[1]);
      row.ok = true;
    } catch (const ModelError& err) {
      row.ok = false;
      row.error = err.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mcvd
