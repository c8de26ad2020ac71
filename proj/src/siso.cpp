#include "mcvd/siso.hpp"

#include <cmath>
#include <sstream>

namespace mcvd {

void validate(const SisoParams& p) {
  if (!(p.rr > 0.0) || !(p.r0 > p.rr) || !(p.D > 0.0)) {
    std::ostringstream os;
    os << "invalid single-receiver parameters: need r0 > rr > 0 and D > 0, got"
       << " r0 = " << p.r0 << ", rr = " << p.rr << ", D = " << p.D;
    throw TopologyError(os.str());
  }
}

double siso_pdf(double t, const SisoParams& p) {
  if (t <= 0.0) return 0.0;
  const double gap = p.r0 - p.rr;
  return (p.rr / p.r0) / std::sqrt(4.0 * M_PI * p.D * t) * (gap / t) *
         std::exp(-gap * gap / (4.0 * p.D * t));
}

double siso_cdf(double t, const SisoParams& p) {
  if (t <= 0.0) return 0.0;
  const double gap = p.r0 - p.rr;
  return (p.rr / p.r0) * std::erfc(gap / std::sqrt(4.0 * p.D * t));
}

double siso_peak_time(const SisoParams& p) {
  const double gap = p.r0 - p.rr;
  return gap * gap / (6.0 * p.D);
}

namespace {

// Unnormalized angular weight: sin(theta) erfc(r0*/sqrt(4Dt)) (r0/r0*)^3
// with r0* the release-point-to-surface-point distance at polar angle theta.
double angular_weight(double theta, double t, const SisoParams& p) {
  const double rstar = std::sqrt(p.r0 * p.r0 + p.rr * p.rr -
                                 2.0 * p.r0 * p.rr * std::cos(theta));
  const double ratio = p.r0 / rstar;
  return std::sin(theta) * std::erfc(rstar / std::sqrt(4.0 * p.D * t)) *
         ratio * ratio * ratio;
}

}  // namespace

double angular_pdf(double theta, double t, const SisoParams& p) {
  if (t <= 0.0) return 0.0;
  // Composite Simpson, 1024 panels over [0, pi].
  constexpr int kPanels = 1024;
  const double h = M_PI / kPanels;
  double sum = angular_weight(0.0, t, p) + angular_weight(M_PI, t, p);
  for (int k = 1; k < kPanels; ++k)
    sum += (k % 2 ? 4.0 : 2.0) * angular_weight(k * h, t, p);
  const double norm = sum * h / 3.0;
  return angular_weight(theta, t, p) / norm;
}

LaplaceCoeffs laplace_coeffs(const Topology& topology) {
  validate(topology);
  if (topology.receivers.size() != 2)
    throw TopologyError("laplace_coeffs requires exactly two receivers");
  const double r1 = topology.receivers[0].radius;
  const double r2 = topology.receivers[1].radius;
  const double r01 = center_distance(topology, 0);
  const double r02 = center_distance(topology, 1);
  const double d12 = cross_distance(topology, 0, 1);  // release 1 -> center 2
  const double d21 = cross_distance(topology, 1, 0);  // release 2 -> center 1
  const double sqrt_d = std::sqrt(topology.diffusion);
  LaplaceCoeffs c;
  c.c1 = r1 / r01;
  c.c2 = r2 / r02;
  c.c12 = r1 / d21;
  c.c21 = r2 / d12;
  c.k1 = (r01 - r1) / sqrt_d;
  c.k2 = (r02 - r2) / sqrt_d;
  c.k12 = (d21 - r1) / sqrt_d;
  c.k21 = (d12 - r2) / sqrt_d;
  return c;
}

}  // namespace mcvd
