#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mcvd/errors.hpp"

namespace mcvd {

using Vec3 = Eigen::Vector3d;

/// Fully absorbing spherical receiver. Lengths in micrometers.
struct Receiver {
  Vec3 center = Vec3::Zero();
  double radius = 0.0;
};

/// One point transmitter plus any number of absorbing spherical receivers
/// in boundless 3-D space. Distances in um, diffusion coefficient in um^2/s.
struct Topology {
  Vec3 tx = Vec3::Zero();
  std::vector<Receiver> receivers;
  double diffusion = 0.0;
};

/// Planar two-receiver layout described Tx-centrically: radii r1/r2,
/// center distances r01/r02 and the separation angle phi (radians).
struct PlanarSpec2Rx {
  double r1 = 0.0;
  double r2 = 0.0;
  double r01 = 0.0;
  double r02 = 0.0;
  double phi = 0.0;
  double diffusion = 0.0;
};

/// Throws TopologyError naming the violated constraint. Checks: D > 0,
/// radii > 0, finite coordinates, Tx strictly outside every receiver and
/// no pair of receivers overlapping or touching.
void validate(const Topology& topology);

void validate(const PlanarSpec2Rx& spec);

/// Places Tx at the origin, Rx1 at (r01, 0, 0) and Rx2 at
/// (r02 cos(phi), r02 sin(phi), 0). The result passes validate().
Topology build_planar_2rx(const PlanarSpec2Rx& spec);

/// Point on receiver i's surface closest to the transmitter: the assumed
/// re-release location of molecules absorbed by that receiver.
Vec3 virtual_release_point(const Topology& topology, int i);

/// Distance from receiver j's virtual release point to receiver i's center.
/// For planar 2-Rx topologies this reduces to the cosine-rule expressions.
/// Throws TopologyError if the release point lies inside the target sphere
/// (the conditional single-receiver response is undefined there).
double cross_distance(const Topology& topology, int from_j, int to_i);

/// Center-to-center distance between Tx and receiver i.
double center_distance(const Topology& topology, int i);

/// Angle at Tx between receivers i and j (radians, in [0, pi]).
double separation_angle(const Topology& topology, int i, int j);

/// Angle at which the farther receiver's center falls on the closer
/// receiver's tangent line: asin(r_closer / r0_closer).
double half_eclipse_angle(const PlanarSpec2Rx& spec);

/// Angle at which the two tangent cones no longer intersect:
/// asin(r_closer / r0_closer) + asin(r_farther / r0_farther).
double no_eclipse_angle(const PlanarSpec2Rx& spec);

}  // namespace mcvd
