#include "mcvd/recursive.hpp"

#include <cmath>

namespace mcvd {

namespace {

using Eigen::ArrayXd;
using Eigen::Index;

SisoParams direct_params(const Topology& topology, int i) {
  return {center_distance(topology, i), topology.receivers[i].radius,
          topology.diffusion};
}

// Per-interval masses of the conditional response from j's virtual release
// point to receiver i, stored reversed: the step-n contribution is then the
// unit-stride dot product rev[N-1-n .. N-2] . p[0 .. n-1].
ArrayXd reversed_kernel(const Topology& topology, int from_j, int to_i,
                        const TimeGrid& grid) {
  const SisoParams cond{cross_distance(topology, from_j, to_i),
                        topology.receivers[to_i].radius, topology.diffusion};
  const Index n = grid.n_steps;
  ArrayXd rev(n);
  double prev = 0.0;
  for (Index m = 0; m < n; ++m) {
    const double next = siso_cdf(grid.t_end(m), cond);
    rev[n - 1 - m] = next - prev;
    prev = next;
  }
  return rev;
}

double convolve_at(const ArrayXd& rev_kernel, const ArrayXd& masses, Index n) {
  if (n == 0) return 0.0;
  const Index size = rev_kernel.size();
  return Eigen::Map<const Eigen::VectorXd>(rev_kernel.data() + size - 1 - n, n)
      .dot(Eigen::Map<const Eigen::VectorXd>(masses.data(), n));
}

HittingCurve clamp_to_curve(const ArrayXd& raw, const TimeGrid& grid) {
  HittingCurve c;
  c.grid = grid;
  c.step_prob = raw.max(0.0);
  c.negative_mass = (-raw).max(0.0).sum();
  c.cumulative.resize(grid.n_steps);
  double run = 0.0;
  for (Index k = 0; k < grid.n_steps; ++k) {
    run += c.step_prob[k];
    c.cumulative[k] = run;
  }
  return c;
}

enum class Inner { Recursive, SingleRx };

std::vector<HittingCurve> run_model(const Topology& topology,
                                    const TimeGrid& grid, Inner inner) {
  validate(topology);
  validate(grid);
  const int n_rx = static_cast<int>(topology.receivers.size());
  const Index n = grid.n_steps;

  std::vector<ArrayXd> siso(n_rx);
  for (int i = 0; i < n_rx; ++i)
    siso[i] = curve_from_cdf(
        [p = direct_params(topology, i)](double t) { return siso_cdf(t, p); },
        grid).step_prob;

  // kernels[j][i]: influence of receiver j's absorptions on receiver i.
  std::vector<std::vector<ArrayXd>> kernels(n_rx, std::vector<ArrayXd>(n_rx));
  for (int j = 0; j < n_rx; ++j)
    for (int i = 0; i < n_rx; ++i)
      if (i != j) kernels[j][i] = reversed_kernel(topology, j, i, grid);

  std::vector<ArrayXd> raw(n_rx, ArrayXd(n));
  for (Index step = 0; step < n; ++step)
    for (int i = 0; i < n_rx; ++i) {
      double stolen = 0.0;
      for (int j = 0; j < n_rx; ++j) {
        if (j == i) continue;
        const ArrayXd& source = (inner == Inner::Recursive) ? raw[j] : siso[j];
        stolen += convolve_at(kernels[j][i], source, step);
      }
      raw[i][step] = siso[i][step] - stolen;
    }

  std::vector<HittingCurve> out;
  out.reserve(n_rx);
  for (int i = 0; i < n_rx; ++i) out.push_back(clamp_to_curve(raw[i], grid));
  return out;
}

}  // namespace

HittingCurve siso_curve(const SisoParams& p, const TimeGrid& grid) {
  validate(p);
  validate(grid);
  return curve_from_cdf([&p](double t) { return siso_cdf(t, p); }, grid);
}

std::vector<HittingCurve> recursive_nrx(const Topology& topology,
                                        const TimeGrid& grid) {
  return run_model(topology, grid, Inner::Recursive);
}

std::pair<HittingCurve, HittingCurve> recursive_2rx(const Topology& topology,
                                                    const TimeGrid& grid) {
  if (topology.receivers.size() != 2)
    throw TopologyError("recursive_2rx requires exactly two receivers");
  auto curves = recursive_nrx(topology, grid);
  return {std::move(curves[0]), std::move(curves[1])};
}

std::vector<HittingCurve> approx_nrx(const Topology& topology,
                                     const TimeGrid& grid) {
  return run_model(topology, grid, Inner::SingleRx);
}

std::pair<HittingCurve, HittingCurve> approx_2rx(const Topology& topology,
                                                 const TimeGrid& grid) {
  if (topology.receivers.size() != 2)
    throw TopologyError("approx_2rx requires exactly two receivers");
  auto curves = approx_nrx(topology, grid);
  return {std::move(curves[0]), std::move(curves[1])};
}

}  // namespace mcvd
