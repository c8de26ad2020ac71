#include "mcvd/geometry.hpp"

#include <cmath>
#include <sstream>

namespace mcvd {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw TopologyError(msg);
}

std::string idx(const char* what, int i) {
  std::ostringstream os;
  os << what << " " << i;
  return os.str();
}

}  // namespace

void validate(const Topology& topology) {
  require(std::isfinite(topology.diffusion) && topology.diffusion > 0.0,
          "diffusion coefficient must be > 0");
  require(topology.tx.allFinite(), "transmitter position must be finite");
  const int n = static_cast<int>(topology.receivers.size());
  for (int i = 0; i < n; ++i) {
    const Receiver& rx = topology.receivers[i];
    require(rx.center.allFinite(), idx("receiver", i) + ": center must be finite");
    require(std::isfinite(rx.radius) && rx.radius > 0.0,
            idx("receiver", i) + ": radius must be > 0");
    const double d = (topology.tx - rx.center).norm();
    if (d <= rx.radius) {
      std::ostringstream os;
      os << "transmitter inside receiver " << i << ": |tx - center| = " << d
         << " <= radius = " << rx.radius;
      throw TopologyError(os.str());
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d =
          (topology.receivers[i].center - topology.receivers[j].center).norm();
      const double rsum =
          topology.receivers[i].radius + topology.receivers[j].radius;
      if (d <= rsum) {
        std::ostringstream os;
        os << "receivers " << i << " and " << j
           << " coincide or overlap: center distance = " << d
           << " <= r" << i << " + r" << j << " = " << rsum;
        throw TopologyError(os.str());
      }
    }
}

void validate(const PlanarSpec2Rx& spec) {
  require(spec.r1 > 0.0 && spec.r2 > 0.0, "radii must be > 0");
  require(spec.r01 > spec.r1, "r01 must exceed r1");
  require(spec.r02 > spec.r2, "r02 must exceed r2");
  require(spec.phi >= 0.0 && spec.phi <= M_PI, "phi must lie in [0, pi]");
  require(spec.diffusion > 0.0, "diffusion coefficient must be > 0");
}

Topology build_planar_2rx(const PlanarSpec2Rx& spec) {
  validate(spec);
  Topology t;
  t.tx = Vec3::Zero();
  t.diffusion = spec.diffusion;
  t.receivers.push_back({Vec3(spec.r01, 0.0, 0.0), spec.r1});
  t.receivers.push_back(
      {Vec3(spec.r02 * std::cos(spec.phi), spec.r02 * std::sin(spec.phi), 0.0),
       spec.r2});
  validate(t);
  return t;
}

Vec3 virtual_release_point(const Topology& topology, int i) {
  const Receiver& rx = topology.receivers.at(i);
  const Vec3 towards_tx = (topology.tx - rx.center).normalized();
  return rx.center + rx.radius * towards_tx;
}

double cross_distance(const Topology& topology, int from_j, int to_i) {
  if (from_j == to_i)
    throw TopologyError("cross_distance requires two distinct receivers");
  const Vec3 release = virtual_release_point(topology, from_j);
  const Receiver& target = topology.receivers.at(to_i);
  const double d = (release - target.center).norm();
  if (d <= target.radius) {
    std::ostringstream os;
    os << "release point of receiver " << from_j << " lies inside receiver "
       << to_i << ": distance = " << d << " <= radius = " << target.radius;
    throw TopologyError(os.str());
  }
  return d;
}

double center_distance(const Topology& topology, int i) {
  return (topology.receivers.at(i).center - topology.tx).norm();
}

double separation_angle(const Topology& topology, int i, int j) {
  const Vec3 a = topology.receivers.at(i).center - topology.tx;
  const Vec3 b = topology.receivers.at(j).center - topology.tx;
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

namespace {

// Orders (radius, center distance) pairs by distance from Tx.
struct ClosestFirst {
  double r_close, r0_close, r_far, r0_far;
  explicit ClosestFirst(const PlanarSpec2Rx& s) {
    if (s.r01 <= s.r02) {
      r_close = s.r1; r0_close = s.r01; r_far = s.r2; r0_far = s.r02;
    } else {
      r_close = s.r2; r0_close = s.r02; r_far = s.r1; r0_far = s.r01;
    }
  }
};

}  // namespace

double half_eclipse_angle(const PlanarSpec2Rx& spec) {
  validate(spec);
  const ClosestFirst o(spec);
  return std::asin(o.r_close / o.r0_close);
}

double no_eclipse_angle(const PlanarSpec2Rx& spec) {
  validate(spec);
  const ClosestFirst o(spec);
  return std::asin(o.r_close / o.r0_close) + std::asin(o.r_far / o.r0_far);
}

}  // namespace mcvd
