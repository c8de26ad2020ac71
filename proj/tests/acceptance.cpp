// Acceptance suite: exercises the full analytic stack against the built-in
// Brownian-motion oracle at study scale and prints one verdict per
// criterion. Exits with the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "mcvd/closed_form.hpp"
#include "mcvd/csv.hpp"
#include "mcvd/metrics.hpp"
#include "mcvd/montecarlo.hpp"
#include "mcvd/recursive.hpp"

using namespace mcvd;

namespace {

int failures = 0;

void report(int number, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  (%s)\n", number, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(
    const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start).count();
}

PlanarSpec2Rx scenario_spec(int which) {
  switch (which) {
    case 1: return {2, 5, 6, 16, 0, 79.4};
    case 2: return {5, 2, 9, 19, 0, 79.4};
    default: return {5, 5, 9, 22, 0, 79.4};
  }
}

Topology scenario(int which, double phi) {
  PlanarSpec2Rx spec = scenario_spec(which);
  spec.phi = phi;
  return build_planar_2rx(spec);
}

const TimeGrid kModelGrid{1e-3, 5000};
const double kHorizon = 5.0;

double rms_between(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b) {
  return std::sqrt((a - b).square().mean());
}

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------------------

void criterion_1_siso_exactness() {
  const auto start = std::chrono::steady_clock::now();
  Topology topology;
  topology.diffusion = 79.4;
  topology.receivers = {{Vec3(15, 0, 0), 6.0}};
  const SimConfig config{50000, 1e-4, kHorizon, 1ULL, 79.4, 1e-3, 0};
  const SimResult sim = simulate(topology, config);
  const HittingCurve analytic = siso_curve({15, 6, 79.4}, kModelGrid);
  const double rms =
      rms_between(sim.curves[0].cumulative, analytic.cumulative);
  const double elapsed = seconds_since(start);
  report(1, rms <= 0.01 && elapsed <= 120.0,
         "single-receiver Monte Carlo vs analytic cumulative: rms = " +
             fmt(rms) + " <= 0.01, runtime = " + fmt(elapsed) + " s <= 120");
}

void criterion_2_comprehensive_vs_mc() {
  const Topology topology = build_planar_2rx({6, 3, 15, 9, 2 * M_PI / 3,
                                              79.4});
  const auto [rx1, rx2] = recursive_2rx(topology, kModelGrid);
  const SimConfig config{50000, 1e-4, kHorizon, 2ULL, 79.4, 1e-3, 0};
  const SimResult sim = simulate(topology, config);
  const double rms1 = rms_between(rx1.cumulative, sim.curves[0].cumulative);
  const double rms2 = rms_between(rx2.cumulative, sim.curves[1].cumulative);
  report(2, rms1 <= 0.03 && rms2 <= 0.03,
         "comprehensive model vs Monte Carlo on the asymmetric pair: "
         "rms_rx1 = " + fmt(rms1) + ", rms_rx2 = " + fmt(rms2) +
             ", tolerance 0.03");
}

void criterion_3_bounds() {
  constexpr double eps = 1e-9;
  bool ok = true;
  std::string worst_case;
  for (int which : {1, 2, 3}) {
    const PlanarSpec2Rx spec = scenario_spec(which);
    for (double phi : {half_eclipse_angle(spec), M_PI / 2, M_PI}) {
      const Topology topology = scenario(which, phi);
      const auto curves = recursive_nrx(topology, kModelGrid);
      Eigen::ArrayXd solo_max = Eigen::ArrayXd::Zero(kModelGrid.n_steps);
      Eigen::ArrayXd solo_sum = Eigen::ArrayXd::Zero(kModelGrid.n_steps);
      Eigen::ArrayXd joint_sum = Eigen::ArrayXd::Zero(kModelGrid.n_steps);
      for (int i = 0; i < 2; ++i) {
        const HittingCurve solo = siso_curve(
            {center_distance(topology, i), topology.receivers[i].radius,
             79.4}, kModelGrid);
        // Per-receiver upper bound.
        if (!((curves[i].cumulative <= solo.cumulative + eps).all()))
          ok = false;
        solo_max = solo_max.max(solo.cumulative);
        solo_sum += solo.cumulative;
        joint_sum += curves[i].cumulative;
      }
      // Two-sided bound on the total.
      const bool lower = (joint_sum >= solo_max - eps).all();
      const bool upper = (joint_sum <= solo_sum + eps).all();
      if (!(lower && upper)) ok = false;
      if (!ok && worst_case.empty()) {
        std::ostringstream os;
        os << "first violation at layout " << which << ", phi = "
           << phi * 180 / M_PI << " deg";
        worst_case = os.str();
      }
    }
  }
  report(3, ok,
         "per-receiver and total-absorption bounds hold pointwise "
         "(eps = 1e-9) on all three layouts at half-eclipse, 90, 180 deg" +
             (worst_case.empty() ? "" : "; " + worst_case));
}

void criterion_4_closed_vs_recursive() {
  const TimeGrid fine{1e-4, 50000};
  bool ok = true;
  double worst = 0.0;
  for (int which : {1, 2, 3}) {
    const Topology topology = scenario(which, M_PI / 2);
    const auto curves = recursive_nrx(topology, fine);
    for (int i = 0; i < 2; ++i) {
      const ClosedFormModel model = build_series(topology, i, 1e-12);
      double gap = 0.0;
      for (Eigen::Index k = 0; k < fine.n_steps; ++k)
        gap = std::max(gap, std::abs(eval_cdf(model, fine.t_end(k)) -
                                     curves[i].cumulative[k]));
      worst = std::max(worst, gap);
      if (gap > 5e-3) ok = false;
    }
  }
  report(4, ok,
         "series solution vs discrete recursion (dt = 1e-4): worst "
         "cumulative gap = " + fmt(worst) + " <= 0.005, three layouts at "
         "90 deg");
}

void criterion_5_approximation_fidelity() {
  bool ok = true;
  std::ostringstream detail;
  for (int which : {1, 2, 3}) {
    const PlanarSpec2Rx spec = scenario_spec(which);
    const double no_eclipse = no_eclipse_angle(spec);

    const auto gap_at = [&](double phi) {
      const Topology topology = scenario(which, phi);
      const auto curves = recursive_2rx(topology, kModelGrid);
      double gap = 0.0;
      for (Eigen::Index k = 0; k < kModelGrid.n_steps; ++k) {
        const double t = kModelGrid.t_end(k);
        gap = std::max(gap, std::abs(approx_cdf(topology, 0, t) -
                                     curves.first.cumulative[k]));
        gap = std::max(gap, std::abs(approx_cdf(topology, 1, t) -
                                     curves.second.cumulative[k]));
      }
      return gap;
    };

    for (double phi : {no_eclipse, M_PI / 2, 3 * M_PI / 4, M_PI})
      if (phi >= no_eclipse && gap_at(phi) > 0.02) ok = false;

    const double tight = gap_at(10.0 * M_PI / 180.0);
    const double open = gap_at(M_PI);
    if (!(tight > open)) ok = false;
    detail << (which > 1 ? "; " : "") << "layout " << which
           << ": gap(10deg) = " << fmt(tight) << " > gap(180deg) = "
           << fmt(open);
  }
  report(5, ok,
         "two-term approximation within 0.02 of the comprehensive model "
         "above the no-eclipse angle, and degrading at 10 deg: " +
             detail.str());
}

void criterion_6_eclipse_angles() {
  constexpr double kDeg = 180.0 / M_PI;
  const double expected[3][2] = {
      {19.47, 37.68}, {33.75, 39.79}, {33.74, 46.88}};
  bool ok = true;
  std::ostringstream detail;
  for (int which : {1, 2, 3}) {
    const PlanarSpec2Rx spec = scenario_spec(which);
    const double half = half_eclipse_angle(spec) * kDeg;
    const double no = no_eclipse_angle(spec) * kDeg;
    if (std::abs(half - expected[which - 1][0]) > 0.01) ok = false;
    if (std::abs(no - expected[which - 1][1]) > 0.01) ok = false;
    detail << (which > 1 ? "; " : "") << fmt(half) << "/" << fmt(no);
  }
  report(6, ok,
         "half/no-eclipse angles (deg) = " + detail.str() +
             " vs 19.47/37.68, 33.75/39.79, 33.74/46.88 within 0.01");
}

void criterion_7_error_trends() {
  const PlanarSpec2Rx spec = scenario_spec(1);
  const std::vector<double> angles = {half_eclipse_angle(spec),
                                      no_eclipse_angle(spec), M_PI / 2,
                                      3 * M_PI / 4, M_PI};
  const SimConfig oracle{50000, 1e-4, kHorizon, 1ULL, 79.4, 1e-3, 0};
  const auto rows =
      angle_sweep(spec, angles, ModelKind::Recursive, oracle, kModelGrid);
  bool ok = true;
  std::ostringstream rx1s, rx2s;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].ok) ok = false;
    rx1s << (r ? " " : "") << fmt(rows[r].rx1.rms);
    rx2s << (r ? " " : "") << fmt(rows[r].rx2.rms);
    if (r > 0 && rows[r].rx2.rms > rows[r - 1].rx2.rms) ok = false;
    if (r > 0 && rows[r].rx1.rms < rows[r - 1].rx1.rms) ok = false;
  }
  // The dominant behavior (rx2 error collapsing as shadowing vanishes, rx1
  // error larger fully opened than at mid angles) reproduces on every seed;
  // the strict five-point ordering does not: rx1's error at the half-eclipse
  // angle systematically exceeds its 37.68 deg value (the release-point
  // assumption for the shadowed receiver feeds back into rx1), and beyond
  // 90 deg rx2 sits at the sampling floor (~1.5e-3) where order is noise.
  report(7, ok,
         "layout-1 trend over {19.47, 37.68, 90, 135, 180} deg: rx1 rms "
         "nondecreasing [" + rx1s.str() + "], rx2 rms nonincreasing [" +
             rx2s.str() + "]");
}

void criterion_8_limits_conservation_refinement() {
  // Limit clause, as stated: the cumulative fraction should reach rr/r0
  // within 1e-4 by T = 200 * (r0-rr)^2 / (6 D). The erfc tail makes this
  // unattainable for this geometry: the remaining gap is
  // (rr/r0) * erf(sqrt(1.5/200)) ~ 9.7% of the limit for any scale.
  const SisoParams p{15, 6, 79.4};
  const double T = 200.0 * siso_peak_time(p);
  const double gap = std::abs(siso_cdf(T, p) - p.rr / p.r0);
  const bool limit_ok = gap <= 1e-4;

  // Conservation, reconstructed from simulation records.
  const Topology pair = build_planar_2rx({6, 3, 15, 9, 2 * M_PI / 3, 79.4});
  const SimConfig config{20000, 1e-3, 1.0, 8ULL, 79.4, 1e-2, 0};
  const SimResult sim = simulate(pair, config);
  bool conservation_ok = true;
  {
    const TimeGrid& grid = sim.curves[0].grid;
    std::vector<std::int64_t> molecule_seen;
    std::vector<std::int64_t> absorbed(grid.n_steps, 0);
    for (const HitRecord& rec : sim.records) {
      molecule_seen.push_back(rec.molecule);
      const auto bin = std::min<std::int64_t>(
          grid.n_steps - 1,
          std::max<std::int64_t>(
              0,
              static_cast<std::int64_t>(std::ceil(rec.time / grid.dt)) - 1));
      ++absorbed[bin];
    }
    std::sort(molecule_seen.begin(), molecule_seen.end());
    if (std::adjacent_find(molecule_seen.begin(), molecule_seen.end()) !=
        molecule_seen.end())
      conservation_ok = false;  // a molecule absorbed twice
    std::int64_t so_far = 0;
    for (Eigen::Index k = 0; k < grid.n_steps; ++k) {
      so_far += absorbed[k];
      const std::int64_t surviving = config.n_molecules - so_far;
      if (so_far + surviving != config.n_molecules) conservation_ok = false;
      const auto binned = static_cast<std::int64_t>(std::llround(
          (sim.curves[0].cumulative[k] + sim.curves[1].cumulative[k]) *
          static_cast<double>(config.n_molecules)));
      if (binned != so_far) conservation_ok = false;
    }
  }

  // Grid refinement: successive halvings must shrink the endpoint moves.
  bool refinement_ok = true;
  {
    const Topology topology = scenario(1, M_PI / 2);
    const double h = 5e-4;
    std::vector<double> end1, end2;
    for (double dt : {4 * h, 2 * h, h}) {
      const auto n = static_cast<Eigen::Index>(std::llround(2.0 / dt));
      const auto curves = recursive_2rx(topology, {dt, n});
      end1.push_back(curves.first.cumulative[n - 1]);
      end2.push_back(curves.second.cumulative[n - 1]);
    }
    if (!(std::abs(end1[2] - end1[1]) < std::abs(end1[1] - end1[0])))
      refinement_ok = false;
    if (!(std::abs(end2[2] - end2[1]) < std::abs(end2[1] - end2[0])))
      refinement_ok = false;
  }

  report(8, limit_ok && conservation_ok && refinement_ok,
         std::string("limit clause ") + (limit_ok ? "holds" : "FAILS") +
             ": |cdf(200*t_peak) - rr/r0| = " + fmt(gap) +
             " vs 1e-4 (analytic erfc tail leaves (rr/r0)*erf(sqrt(1.5/200))"
             " = " + fmt(p.rr / p.r0 * std::erf(std::sqrt(1.5 / 200.0))) +
             " at this horizon for any geometry); conservation " +
             (conservation_ok ? "holds exactly" : "FAILS") +
             "; dt-halving differences " +
             (refinement_ok ? "shrink monotonically" : "FAIL"));
}

void criterion_9_determinism() {
  const Topology pair = build_planar_2rx({6, 3, 15, 9, 2 * M_PI / 3, 79.4});
  std::vector<std::string> outputs;
  for (int threads : {1, 2, 4}) {
    const SimConfig config{20000, 1e-4, 1.0, 12345ULL, 79.4, 1e-2, threads};
    const SimResult sim = simulate(pair, config);
    std::ostringstream os;
    os << "molecule,time_s,x_um,y_um,z_um,rx\n";
    for (const HitRecord& rec : sim.records)
      os << format_int(rec.molecule) << ',' << format_double(rec.time) << ','
         << format_double(rec.point.x()) << ','
         << format_double(rec.point.y()) << ','
         << format_double(rec.point.z()) << ',' << rec.receiver + 1 << '\n';
    outputs.push_back(os.str());
  }
  const bool ok = outputs[0] == outputs[1] && outputs[1] == outputs[2] &&
                  !outputs[0].empty();
  report(9, ok,
         "hit-record CSV byte-identical across 1/2/4 worker threads with a "
         "fixed seed (" + format_int(static_cast<std::int64_t>(
                              outputs[0].size())) + " bytes)");
}

}  // namespace

int main(int argc, char** argv) {
  void (*criteria[])() = {
      criterion_1_siso_exactness,      criterion_2_comprehensive_vs_mc,
      criterion_3_bounds,              criterion_4_closed_vs_recursive,
      criterion_5_approximation_fidelity, criterion_6_eclipse_angles,
      criterion_7_error_trends,
      criterion_8_limits_conservation_refinement, criterion_9_determinism};
  if (argc > 1) {  // run one criterion, e.g. for per-criterion ctest entries
    const int which = std::atoi(argv[1]);
    if (which < 1 || which > 9) {
      std::fprintf(stderr, "usage: %s [1..9]\n", argv[0]);
      return 64;
    }
    criteria[which - 1]();
    return failures;
  }
  std::printf("acceptance suite: analytic models vs Brownian-motion "
              "oracle (this takes several minutes)\n");
  for (auto* criterion : criteria) criterion();
  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures;
}
