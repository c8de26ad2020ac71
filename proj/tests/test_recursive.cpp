#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mcvd/recursive.hpp"

using namespace mcvd;

namespace {

const TimeGrid kGrid{1e-3, 5000};

Topology scenario(int which, double phi) {
  switch (which) {
    case 1: return build_planar_2rx({2, 5, 6, 16, phi, 79.4});
    case 2: return build_planar_2rx({5, 2, 9, 19, phi, 79.4});
    default: return build_planar_2rx({5, 5, 9, 22, phi, 79.4});
  }
}

Topology fig_topology() {
  return build_planar_2rx({6, 3, 15, 9, 2 * M_PI / 3, 79.4});
}

double max_cum_gap(const HittingCurve& a, const HittingCurve& b) {
  return (a.cumulative - b.cumulative).abs().maxCoeff();
}

// Three identical receivers with 3-fold symmetry about the x axis through
// Tx: equal radii, equal Tx distances and equal pairwise cross distances.
Topology symmetric_ring() {
  Topology t;
  t.diffusion = 79.4;
  t.tx = Vec3::Zero();
  const double r = 2.0, a = 6.0, b = 8.0;
  for (int k = 0; k < 3; ++k) {
    const double ang = 2.0 * M_PI * k / 3.0;
    t.receivers.push_back({Vec3(a, b * std::cos(ang), b * std::sin(ang)), r});
  }
  validate(t);
  return t;
}

}  // namespace

TEST_CASE("discretized single-receiver curve telescopes to the CDF") {
  const SisoParams p{15, 6, 79.4};
  const HittingCurve c = siso_curve(p, kGrid);
  REQUIRE(c.step_prob.size() == 5000);

  double run = 0.0;
  for (Eigen::Index k = 0; k < c.step_prob.size(); ++k) run += c.step_prob[k];
  CHECK(run == c.cumulative[4999]);  // sequential sum matches exactly

  CHECK(c.cumulative[999] == doctest::Approx(siso_cdf(1.0, p)).epsilon(1e-12));
  CHECK(c.cumulative[999] == doctest::Approx(0.190042458).epsilon(1e-8));

  // Long horizon: the discrete curve ends at the analytic value, still on
  // its slow erfc approach to rr/r0 (0.36782 at T = 50, not yet 0.4).
  const HittingCurve long_run = siso_curve(p, {1e-2, 5000});
  CHECK(long_run.cumulative[4999] ==
        doctest::Approx(siso_cdf(50.0, p)).epsilon(1e-12));
  CHECK(long_run.cumulative[4999] == doctest::Approx(0.3678194).epsilon(1e-6));
}

TEST_CASE("a vanishing companion receiver leaves the response untouched") {
  Topology t = build_planar_2rx({6, 3, 15, 9, 2 * M_PI / 3, 79.4});
  t.receivers[1].radius = 1e-9;
  const TimeGrid grid{1e-3, 1000};
  const auto [rx1, rx2] = recursive_2rx(t, grid);
  const HittingCurve solo = siso_curve({15, 6, 79.4}, grid);
  CHECK(max_cum_gap(rx1, solo) < 1e-9);
  CHECK(rx2.cumulative[999] < 1e-9);

  const auto [a1, a2] = approx_2rx(t, grid);
  CHECK(max_cum_gap(a1, solo) < 1e-9);
}

TEST_CASE("mirror-symmetric receivers give identical curves") {
  const Topology t = build_planar_2rx({4, 4, 10, 10, 2.0, 79.4});
  const TimeGrid grid{1e-3, 2000};
  const auto [rx1, rx2] = recursive_2rx(t, grid);
  CHECK((rx1.step_prob == rx2.step_prob).all());
  CHECK((rx1.cumulative == rx2.cumulative).all());
}

TEST_CASE("a competing receiver depresses the response curve") {
  const auto [rx1, rx2] = recursive_2rx(fig_topology(), kGrid);
  const HittingCurve solo1 = siso_curve({15, 6, 79.4}, kGrid);
  for (Eigen::Index k = 100; k < kGrid.n_steps; k += 50)  // t > 0.1 s
    CHECK(rx1.cumulative[k] < solo1.cumulative[k]);
}

TEST_CASE("n-receiver recursion degenerates correctly") {
  const TimeGrid grid{1e-3, 1000};

  SUBCASE("single receiver equals the plain curve") {
    Topology t;
    t.diffusion = 79.4;
    t.receivers = {{Vec3(15, 0, 0), 6.0}};
    const auto curves = recursive_nrx(t, grid);
    const HittingCurve solo = siso_curve({15, 6, 79.4}, grid);
    CHECK((curves[0].step_prob == solo.step_prob).all());
    const auto approx = approx_nrx(t, grid);
    CHECK((approx[0].step_prob == solo.step_prob).all());
  }

  SUBCASE("two receivers match the pair version bit for bit") {
    const Topology t = fig_topology();
    const auto pair_curves = recursive_2rx(t, grid);
    const auto n_curves = recursive_nrx(t, grid);
    CHECK((pair_curves.first.step_prob == n_curves[0].step_prob).all());
    CHECK((pair_curves.second.step_prob == n_curves[1].step_prob).all());

    const auto a_pair = approx_2rx(t, grid);
    const auto a_n = approx_nrx(t, grid);
    CHECK((a_pair.first.step_prob == a_n[0].step_prob).all());
    CHECK((a_pair.second.step_prob == a_n[1].step_prob).all());
  }

  SUBCASE("a symmetric ring of three yields three identical curves") {
    for (const auto& curves :
         {recursive_nrx(symmetric_ring(), grid),
          approx_nrx(symmetric_ring(), grid)}) {
      REQUIRE(curves.size() == 3);
      CHECK((curves[0].cumulative == curves[1].cumulative).all());
      CHECK((curves[1].cumulative == curves[2].cumulative).all());
    }
  }
}

TEST_CASE("approximation stays near the comprehensive model") {
  const Topology t = scenario(1, M_PI / 2);
  const auto [c1, c2] = recursive_2rx(t, kGrid);
  const auto [a1, a2] = approx_2rx(t, kGrid);
  CHECK(max_cum_gap(a1, c1) <= 0.02);
  CHECK(max_cum_gap(a2, c2) <= 0.02);
}

TEST_CASE("approximation error shrinks as the separation angle opens") {
  const TimeGrid grid{1e-3, 2000};
  const double half = std::asin(5.0 / 9.0);
  double gap_half = 0.0, gap_pi = 0.0;
  {
    const Topology t = scenario(3, half);
    const auto comp = recursive_2rx(t, grid);
    const auto appr = approx_2rx(t, grid);
    gap_half = std::max(max_cum_gap(appr.first, comp.first),
                        max_cum_gap(appr.second, comp.second));
  }
  {
    const Topology t = scenario(3, M_PI);
    const auto comp = recursive_2rx(t, grid);
    const auto appr = approx_2rx(t, grid);
    gap_pi = std::max(max_cum_gap(appr.first, comp.first),
                      max_cum_gap(appr.second, comp.second));
  }
  CHECK(gap_pi < gap_half);
}

TEST_CASE("recursive curves never exceed their single-receiver bound") {
  for (int which : {1, 2, 3})
    for (double phi : {0.6, M_PI / 2, M_PI}) {
      const Topology t = scenario(which, phi);
      const auto curves = recursive_nrx(t, kGrid);
      for (int i = 0; i < 2; ++i) {
        const HittingCurve solo =
            siso_curve({center_distance(t, i), t.receivers[i].radius, 79.4},
                       kGrid);
        CHECK((curves[i].cumulative <= solo.cumulative + 1e-12).all());
      }
    }
}

TEST_CASE("total absorption sits between the single-receiver bounds") {
  for (int which : {1, 2, 3}) {
    const Topology t = scenario(which, M_PI / 2);
    const auto curves = recursive_nrx(t, kGrid);
    const HittingCurve s1 =
        siso_curve({center_distance(t, 0), t.receivers[0].radius, 79.4},
                   kGrid);
    const HittingCurve s2 =
        siso_curve({center_distance(t, 1), t.receivers[1].radius, 79.4},
                   kGrid);
    const Eigen::ArrayXd total = curves[0].cumulative + curves[1].cumulative;
    constexpr double eps = 1e-9;
    CHECK((total >= s1.cumulative.max(s2.cumulative) - eps).all());
    CHECK((total <= s1.cumulative + s2.cumulative + eps).all());
  }
}

TEST_CASE("truncating the grid reproduces a prefix of the full run") {
  const Topology t = fig_topology();
  const auto full = recursive_2rx(t, {1e-3, 800});
  const auto part = recursive_2rx(t, {1e-3, 137});
  CHECK((full.first.step_prob.head(137) == part.first.step_prob).all());
  CHECK((full.second.step_prob.head(137) == part.second.step_prob).all());
}

TEST_CASE("receiver order only permutes the output") {
  Topology t = fig_topology();
  const auto forward = recursive_nrx(t, {1e-3, 500});
  std::swap(t.receivers[0], t.receivers[1]);
  const auto swapped = recursive_nrx(t, {1e-3, 500});
  CHECK((forward[0].step_prob == swapped[1].step_prob).all());
  CHECK((forward[1].step_prob == swapped[0].step_prob).all());
}

TEST_CASE("grid refinement converges with shrinking differences") {
  const Topology t = fig_topology();
  const double h = 5e-4;
  std::vector<double> endpoints;
  for (double dt : {4 * h, 2 * h, h}) {
    const auto n = static_cast<Eigen::Index>(std::llround(2.0 / dt));
    const auto curves = recursive_2rx(t, {dt, n});
    endpoints.push_back(curves.first.cumulative[n - 1]);
  }
  const double d1 = std::abs(endpoints[1] - endpoints[0]);
  const double d2 = std::abs(endpoints[2] - endpoints[1]);
  CHECK(d2 < d1);
}

TEST_CASE("no meaningful negative mass arises on the study topologies") {
  for (int which : {1, 2, 3})
    for (double phi : {0.6, M_PI / 2, M_PI}) {
      const auto curves = recursive_nrx(scenario(which, phi), kGrid);
      for (const auto& c : curves) {
        CHECK(c.negative_mass < 1e-6);
        CHECK((c.step_prob >= 0.0).all());
      }
    }
}
