#pragma once

#include <cstdint>
#include <vector>

#include "mcvd/curve.hpp"
#include "mcvd/geometry.hpp"

namespace mcvd {

/// Brownian-motion simulation parameters. curve_dt controls the binning of
/// the returned curves (0 means the simulation step). n_threads = 0 picks
/// the hardware concurrency; the output is identical for any value.
struct SimConfig {
  std::int64_t n_molecules = 0;
  double dt = 0.0;
  double horizon = 0.0;
  std::uint64_t seed = 0;
  double diffusion = 0.0;
  double curve_dt = 0.0;
  int n_threads = 0;
};

void validate(const SimConfig& config);

/// One absorption event: the molecule id, the interpolated hit time, the
/// hit point on the receiver surface (within 1e-6 um) and the receiver.
struct HitRecord {
  std::int64_t molecule = 0;
  double time = 0.0;
  Vec3 point = Vec3::Zero();
  int receiver = 0;
};

struct SimResult {
  std::vector<HitRecord> records;        // ordered by molecule id
  std::vector<HittingCurve> curves;      // one per receiver, curve_dt grid
};

/// Simulates n_molecules independent Brownian walkers released at Tx with
/// per-coordinate step stddev sqrt(2 D dt). A molecule whose end-of-step
/// position lies inside a receiver is absorbed at the first intersection
/// of the step segment with that sphere, with the hit time interpolated
/// along the step. Absorbed molecules are removed.
///
/// Determinism: every molecule draws from its own RNG stream derived from
/// (seed, molecule id), and records merge in molecule order, so equal
/// configs produce bit-identical results at any thread count.
SimResult simulate(const Topology& topology, const SimConfig& config);

/// Histogram over polar angle (relative to the receiver-center -> Tx axis)
/// of the hits recorded on `receiver`, with n_theta_bins uniform bins on
/// [0, pi]. Throws DataError when that receiver has no hits.
std::vector<std::int64_t> heatmap(const std::vector<HitRecord>& records,
                                  const Topology& topology, int receiver,
                                  int n_theta_bins);

/// Bins one receiver's hit times onto `grid`; cumulative = hits so far / N.
HittingCurve empirical_curve(const std::vector<HitRecord>& records,
                             const TimeGrid& grid, int receiver,
                             std::int64_t n_molecules);

}  // namespace mcvd
