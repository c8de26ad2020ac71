#pragma once

#include <Eigen/Dense>

#include "mcvd/errors.hpp"

namespace mcvd {

/// Uniform time discretization: t_k = k * dt for k = 0 .. n_steps.
struct TimeGrid {
  double dt = 0.0;
  Eigen::Index n_steps = 0;

  double t(Eigen::Index k) const { return dt * static_cast<double>(k); }
  double t_end(Eigen::Index k) const { return dt * static_cast<double>(k + 1); }
  double horizon() const { return dt * static_cast<double>(n_steps); }
  bool operator==(const TimeGrid&) const = default;
};

void validate(const TimeGrid& grid);

/// Discrete hitting-probability curve of one receiver. step_prob[k] is the
/// probability mass absorbed in (t_k, t_{k+1}]; cumulative is its prefix
/// sum ("fraction of molecules" up to t_{k+1}). negative_mass records any
/// model-subtraction overshoot that was clamped out of step_prob.
struct HittingCurve {
  TimeGrid grid;
  Eigen::ArrayXd step_prob;
  Eigen::ArrayXd cumulative;
  double negative_mass = 0.0;
};

/// Builds a curve from a cumulative-fraction function F via exact
/// per-interval differences: step_prob[k] = F(t_{k+1}) - F(t_k).
template <class CdfFn>
HittingCurve curve_from_cdf(CdfFn&& cdf, const TimeGrid& grid) {
  HittingCurve c;
  c.grid = grid;
  c.step_prob.resize(grid.n_steps);
  c.cumulative.resize(grid.n_steps);
  double prev = cdf(0.0);
  double run = 0.0;
  for (Eigen::Index k = 0; k < grid.n_steps; ++k) {
    const double next = cdf(grid.t_end(k));
    c.step_prob[k] = next - prev;
    run += c.step_prob[k];
    c.cumulative[k] = run;
    prev = next;
  }
  return c;
}

}  // namespace mcvd
