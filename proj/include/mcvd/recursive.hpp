#pragma once

#include <utility>
#include <vector>

#include "mcvd/curve.hpp"
#include "mcvd/geometry.hpp"
#include "mcvd/siso.hpp"

namespace mcvd {

/// Discretized single-receiver response: per-interval masses are exact CDF
/// differences, so no dt factor appears in the convolutions below.
HittingCurve siso_curve(const SisoParams& p, const TimeGrid& grid);

/// Comprehensive recursive multi-receiver estimator. For each receiver i,
///   p_i[n] = s_i[n] - sum_{j != i} sum_{k < n} p_j[k] * q_{j->i}[n - k]
/// where s_i is the single-receiver mass curve of i and q_{j->i}[m] is the
/// per-interval mass of the conditional response from j's virtual release
/// point to i (q[0] covers (0, dt]; lag 0 never enters the sum: a molecule
/// cannot be re-absorbed in the step it was absorbed). All curves advance
/// jointly in one causal forward pass. Raw masses propagate through the
/// recursion; reported step_prob is clamped at 0 with the clamped total
/// recorded in negative_mass.
std::vector<HittingCurve> recursive_nrx(const Topology& topology,
                                        const TimeGrid& grid);

/// Two-receiver comprehensive estimator (recursive_nrx specialization).
std::pair<HittingCurve, HittingCurve> recursive_2rx(const Topology& topology,
                                                    const TimeGrid& grid);

/// One-expansion simplified approximation: the convolution uses the other
/// receiver's single-receiver curve instead of its recursive one,
///   a_i[n] = s_i[n] - sum_{j != i} sum_{k < n} s_j[k] * q_{j->i}[n - k].
std::vector<HittingCurve> approx_nrx(const Topology& topology,
                                     const TimeGrid& grid);

std::pair<HittingCurve, HittingCurve> approx_2rx(const Topology& topology,
                                                 const TimeGrid& grid);

}  // namespace mcvd
