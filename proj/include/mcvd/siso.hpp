#pragma once

#include "mcvd/geometry.hpp"

namespace mcvd {

/// Single-receiver channel parameters: center distance r0, receiver
/// radius rr (um) and diffusion coefficient D (um^2/s). Requires
/// r0 > rr > 0 and D > 0.
struct SisoParams {
  double r0 = 0.0;
  double rr = 0.0;
  double D = 0.0;
};

void validate(const SisoParams& p);

/// First-hit rate (1/s) of a molecule released at distance r0 from an
/// absorbing sphere of radius rr:
///   (rr/r0) / sqrt(4 pi D t) * (r0 - rr)/t * exp(-(r0-rr)^2 / (4 D t)).
/// Defined as 0 at t = 0.
double siso_pdf(double t, const SisoParams& p);

/// Fraction of molecules absorbed by time t:
///   (rr/r0) * erfc((r0 - rr) / sqrt(4 D t)).
/// Monotone, 0 at t = 0, limit rr/r0 as t -> inf.
double siso_cdf(double t, const SisoParams& p);

/// Time of the siso_pdf maximum, (r0 - rr)^2 / (6 D).
double siso_peak_time(const SisoParams& p);

/// Polar-angle density (1/rad) of the molecules absorbed by time t,
/// measured from the receiver-center -> Tx axis. Self-normalized over
/// [0, pi] by composite-Simpson quadrature (1024 panels).
double angular_pdf(double theta, double t, const SisoParams& p);

/// Shortened amplitudes and widths of the Laplace-domain two-receiver
/// response. c-values are dimensionless, k-values carry s^(1/2).
struct LaplaceCoeffs {
  double c1, c2, c12, c21;
  double k1, k2, k12, k21;
};

/// Coefficients of a validated 2-receiver topology:
///   c1 = r1/r01, c12 = r1/r0_{2->1}, k1 = (r01 - r1)/sqrt(D), ...
LaplaceCoeffs laplace_coeffs(const Topology& topology);

}  // namespace mcvd
