#pragma once

#include <vector>

#include "mcvd/curve.hpp"
#include "mcvd/geometry.hpp"
#include "mcvd/siso.hpp"

namespace mcvd {

/// One term of the closed-form series: sign * A * exp(-B sqrt(s)) in the
/// Laplace domain, i.e. sign * A/sqrt(4 pi t) * B/t * exp(-B^2/(4 t)) in
/// time. amplitude is dimensionless, width carries s^(1/2).
struct SeriesTerm {
  double amplitude = 0.0;
  double width = 0.0;
  int sign = +1;
};

/// Truncated series model of one receiver's response in a 2-Rx topology.
/// Terms are ordered by increasing expansion index i (a +/- pair per i);
/// the last pair's amplitudes are <= truncation_eps.
struct ClosedFormModel {
  std::vector<SeriesTerm> terms;
  double truncation_eps = 0.0;
  int receiver = 0;
};

/// Convergence diagnostic of the geometric expansion: product = c12 * c21
/// (the s -> 0+ worst case on the real axis), margin = 1 - product.
struct RocDiagnostic {
  double product = 0.0;
  double margin = 0.0;
};

RocDiagnostic roc_check(const Topology& topology);

/// The full complex-s convergence inequality for a single factor
/// c * exp(-k sqrt(s)) at s = sigma + i*omega:
///   c < exp(k * sqrt((sqrt(sigma^2 + omega^2) + sigma) / 2)).
bool roc_holds_at(double c, double k, double sigma, double omega);

/// Expands receiver `receiver`'s response into series terms, emitting
/// +/- pairs for i = 0, 1, ... until both amplitudes drop below eps.
/// Throws RocError when c12 * c21 >= 1.
ClosedFormModel build_series(const Topology& topology, int receiver,
                             double eps = 1e-12);
ClosedFormModel build_series(const LaplaceCoeffs& coeffs, int receiver,
                             double eps = 1e-12);

/// Hitting rate of the series model at time t (0 at t = 0).
double eval_pdf(const ClosedFormModel& model, double t);

/// Absorbed fraction by time t; each term integrates in closed form to
/// sign * A * erfc(B / (2 sqrt(t))).
double eval_cdf(const ClosedFormModel& model, double t);

/// Two-term analytic approximation (the i = 0 slice of the full series).
double approx_pdf(const Topology& topology, int receiver, double t);
double approx_cdf(const Topology& topology, int receiver, double t);

/// Series model evaluated as a discrete mass curve via exact per-interval
/// CDF differences.
HittingCurve closed_form_curve(const ClosedFormModel& model,
                               const TimeGrid& grid);

}  // namespace mcvd
