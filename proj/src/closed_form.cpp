#include "mcvd/closed_form.hpp"

#include <cmath>
#include <sstream>

namespace mcvd {

namespace {

// Inverse transform of A exp(-B sqrt(s)): A/sqrt(4 pi t) * B/t * exp(-B^2/4t).
double term_pdf(double amplitude, double width, double t) {
  if (t <= 0.0) return 0.0;
  return amplitude / std::sqrt(4.0 * M_PI * t) * (width / t) *
         std::exp(-width * width / (4.0 * t));
}

double term_cdf(double amplitude, double width, double t) {
  if (t <= 0.0) return 0.0;
  return amplitude * std::erfc(width / (2.0 * std::sqrt(t)));
}

// Receiver-relative view of the coefficients: `own` belongs to the target
// receiver, `other` to the competing one.
struct Oriented {
  double c_own, k_own, c_other, c_cross_own, k_other, k_cross_own, k_pair;
};

Oriented orient(const LaplaceCoeffs& c, int receiver) {
  if (receiver == 0)
    return {c.c1, c.k1, c.c2, c.c12, c.k2, c.k12, c.k12 + c.k21};
  return {c.c2, c.k2, c.c1, c.c21, c.k1, c.k21, c.k12 + c.k21};
}

}  // namespace

RocDiagnostic roc_check(const Topology& topology) {
  const LaplaceCoeffs c = laplace_coeffs(topology);
  const double product = c.c12 * c.c21;
  return {product, 1.0 - product};
}

bool roc_holds_at(double c, double k, double sigma, double omega) {
  const double mag = std::sqrt(sigma * sigma + omega * omega);
  return c < std::exp(k * std::sqrt((mag + sigma) / 2.0));
}

ClosedFormModel build_series(const LaplaceCoeffs& coeffs, int receiver,
                             double eps) {
  if (receiver != 0 && receiver != 1)
    throw TopologyError("series receiver index must be 0 or 1");
  const double ratio = coeffs.c12 * coeffs.c21;
  if (!(ratio < 1.0)) {
    std::ostringstream os;
    os << "series expansion diverges: c12 * c21 = " << ratio << " >= 1";
    throw RocError(os.str());
  }
  const Oriented o = orient(coeffs, receiver);
  ClosedFormModel model;
  model.truncation_eps = eps;
  model.receiver = receiver;
  double pos_amp = o.c_own;                 // A for the + family at i = 0
  double neg_amp = o.c_other * o.c_cross_own;
  double pos_width = o.k_own;
  double neg_width = o.k_other + o.k_cross_own;
  for (;;) {
    model.terms.push_back({pos_amp, pos_width, +1});
    model.terms.push_back({neg_amp, neg_width, -1});
    if (pos_amp < eps && neg_amp < eps) break;
    pos_amp *= ratio;
    neg_amp *= ratio;
    pos_width += o.k_pair;
    neg_width += o.k_pair;
  }
  return model;
}

ClosedFormModel build_series(const Topology& topology, int receiver,
                             double eps) {
  return build_series(laplace_coeffs(topology), receiver, eps);
}

double eval_pdf(const ClosedFormModel& model, double t) {
  if (t <= 0.0) return 0.0;
  double sum = 0.0;
  for (const SeriesTerm& term : model.terms)
    sum += term.sign * term_pdf(term.amplitude, term.width, t);
  return sum;
}

double eval_cdf(const ClosedFormModel& model, double t) {
  if (t <= 0.0) return 0.0;
  double sum = 0.0;
  for (const SeriesTerm& term : model.terms)
    sum += term.sign * term_cdf(term.amplitude, term.width, t);
  return sum;
}

double approx_pdf(const Topology& topology, int receiver, double t) {
  const Oriented o = orient(laplace_coeffs(topology), receiver);
  return term_pdf(o.c_own, o.k_own, t) -
         term_pdf(o.c_other * o.c_cross_own, o.k_other + o.k_cross_own, t);
}

double approx_cdf(const Topology& topology, int receiver, double t) {
  const Oriented o = orient(laplace_coeffs(topology), receiver);
  return term_cdf(o.c_own, o.k_own, t) -
         term_cdf(o.c_other * o.c_cross_own, o.k_other + o.k_cross_own, t);
}

HittingCurve closed_form_curve(const ClosedFormModel& model,
                               const TimeGrid& grid) {
  validate(grid);
  return curve_from_cdf([&model](double t) { return eval_cdf(model, t); },
                        grid);
}

}  // namespace mcvd
