#include "mcvd/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>
#include <thread>

namespace mcvd {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t v, int k) {
  return (v << k) | (v >> (64 - k));
}

// xoshiro256++, one independent stream per molecule. The stream layout is
// part of the determinism contract; the generator choice is not.
class Xoshiro256pp {
public:
  Xoshiro256pp(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
    for (auto& word : state_) word = splitmix64(x);
  }
  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

private:
  std::uint64_t state_[4];
};

// Uniform in (-1, 1) from the high 53 bits.
inline double uniform_pm1(std::uint64_t bits) {
  return static_cast<double>(static_cast<std::int64_t>(bits >> 11) -
                             (1LL << 52)) * 0x1.0p-52;
}

// Marsaglia polar method; caches the second variate of each pair.
class NormalSampler {
public:
  Xoshiro256pp rng;
  explicit NormalSampler(std::uint64_t seed, std::uint64_t stream)
      : rng(seed, stream) {}
  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = uniform_pm1(rng.next());
      v = uniform_pm1(rng.next());
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

private:
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct Sphere {
  double cx, cy, cz, r, r2;
};

// First intersection parameter of segment p -> p + d with the sphere,
// assuming the start lies outside and the end inside.
double entry_parameter(double px, double py, double pz, double dx, double dy,
                       double dz, const Sphere& s) {
  const double ox = px - s.cx, oy = py - s.cy, oz = pz - s.cz;
  const double a = dx * dx + dy * dy + dz * dz;
  const double b = 2.0 * (ox * dx + oy * dy + oz * dz);
  const double c = ox * ox + oy * oy + oz * oz - s.r2;
  const double disc = b * b - 4.0 * a * c;
  if (disc <= 0.0 || a == 0.0) return 1.0;  // grazing/degenerate: keep end
  const double root = (-b - std::sqrt(disc)) / (2.0 * a);
  return std::clamp(root, 0.0, 1.0);
}

void simulate_range(const Topology& topology, const SimConfig& config,
                    std::int64_t first, std::int64_t last,
                    std::vector<HitRecord>& out) {
  const int n_rx = static_cast<int>(topology.receivers.size());
  std::vector<Sphere> spheres(n_rx);
  for (int i = 0; i < n_rx; ++i) {
    const Receiver& rx = topology.receivers[i];
    spheres[i] = {rx.center.x(), rx.center.y(), rx.center.z(), rx.radius,
                  rx.radius * rx.radius};
  }
  const auto n_steps =
      static_cast<std::int64_t>(std::llround(config.horizon / config.dt));
  const double sigma = std::sqrt(2.0 * config.diffusion * config.dt);

  for (std::int64_t mol = first; mol < last; ++mol) {
    NormalSampler normal(config.seed, static_cast<std::uint64_t>(mol));
    double px = topology.tx.x(), py = topology.tx.y(), pz = topology.tx.z();
    for (std::int64_t step = 0; step < n_steps; ++step) {
      const double dx = sigma * normal.next();
      const double dy = sigma * normal.next();
      const double dz = sigma * normal.next();
      const double qx = px + dx, qy = py + dy, qz = pz + dz;
      int hit = -1;
      for (int i = 0; i < n_rx; ++i) {
        const double ex = qx - spheres[i].cx;
        const double ey = qy - spheres[i].cy;
        const double ez = qz - spheres[i].cz;
        if (ex * ex + ey * ey + ez * ez <= spheres[i].r2) {
          hit = i;
          break;
        }
      }
      if (hit < 0) {
        px = qx;
        py = qy;
        pz = qz;
        continue;
      }
      const Sphere& s = spheres[hit];
      double frac;
      const double sx = px - s.cx, sy = py - s.cy, sz = pz - s.cz;
      if (sx * sx + sy * sy + sz * sz <= s.r2) {
        frac = 0.0;  // start already inside (numeric drift): snap in place
      } else {
        frac = entry_parameter(px, py, pz, dx, dy, dz, s);
      }
      Vec3 point(px + frac * dx, py + frac * dy, pz + frac * dz);
      const Vec3 center(s.cx, s.cy, s.cz);
      point = center + s.r * (point - center).normalized();
      const double time = (static_cast<double>(step) + frac) * config.dt;
      out.push_back({mol, time, point, hit});
      break;
    }
  }
}

}  // namespace

void validate(const SimConfig& config) {
  std::ostringstream os;
  if (config.n_molecules < 1)
    os << "n_molecules must be >= 1";
  else if (!(config.dt > 0.0))
    os << "dt must be > 0";
  else if (!(config.horizon >= config.dt))
    os << "horizon must be >= dt";
  else if (!(config.diffusion > 0.0))
    os << "diffusion coefficient must be > 0";
  else if (config.curve_dt < 0.0)
    os << "curve_dt must be >= 0";
  else
    return;
  throw TopologyError("invalid simulation config: " + os.str());
}

SimResult simulate(const Topology& topology, const SimConfig& config) {
  validate(topology);
  validate(config);

  int n_threads = config.n_threads;
  if (n_threads <= 0)
    n_threads = std::max(1u, std::thread::hardware_concurrency());
  const std::int64_t n = config.n_molecules;
  n_threads = static_cast<int>(
      std::min<std::int64_t>(n_threads, n));
  const std::int64_t chunk = (n + n_threads - 1) / n_threads;

  std::vector<std::vector<HitRecord>> partial(n_threads);
  {
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (int w = 0; w < n_threads; ++w) {
      const std::int64_t first = w * chunk;
      const std::int64_t last = std::min(n, first + chunk);
      workers.emplace_back(simulate_range, std::cref(topology),
                           std::cref(config), first, last,
                           std::ref(partial[w]));
    }
    for (auto& worker : workers) worker.join();
  }

  SimResult result;
  for (auto& part : partial) {
    result.records.insert(result.records.end(), part.begin(), part.end());
    part.clear();
  }

  const double curve_dt = config.curve_dt > 0.0 ? config.curve_dt : config.dt;
  TimeGrid grid{curve_dt, static_cast<Eigen::Index>(
                              std::llround(config.horizon / curve_dt))};
  grid.n_steps = std::max<Eigen::Index>(grid.n_steps, 1);
  for (int i = 0; i < static_cast<int>(topology.receivers.size()); ++i)
    result.curves.push_back(empirical_curve(result.records, grid, i, n));
  return result;
}

std::vector<std::int64_t> heatmap(const std::vector<HitRecord>& records,
                                  const Topology& topology, int receiver,
                                  int n_theta_bins) {
  if (n_theta_bins < 1) throw DataError("heatmap needs at least one bin");
  const Receiver& rx = topology.receivers.at(receiver);
  const Vec3 axis = (topology.tx - rx.center).normalized();
  std::vector<std::int64_t> bins(n_theta_bins, 0);
  std::int64_t total = 0;
  for (const HitRecord& rec : records) {
    if (rec.receiver != receiver) continue;
    const Vec3 radial = (rec.point - rx.center).normalized();
    const double theta =
        std::acos(std::clamp(radial.dot(axis), -1.0, 1.0));
    auto bin = static_cast<std::int64_t>(theta / M_PI * n_theta_bins);
    bin = std::clamp<std::int64_t>(bin, 0, n_theta_bins - 1);
    ++bins[bin];
    ++total;
  }
  if (total == 0) {
    std::ostringstream os;
    os << "no hits recorded for receiver " << receiver;
    throw DataError(os.str());
  }
  return bins;
}

HittingCurve empirical_curve(const std::vector<HitRecord>& records,
                             const TimeGrid& grid, int receiver,
                             std::int64_t n_molecules) {
  validate(grid);
  if (n_molecules < 1) throw DataError("n_molecules must be >= 1");
  std::vector<std::int64_t> counts(grid.n_steps, 0);
  for (const HitRecord& rec : records) {
    if (rec.receiver != receiver) continue;
    // Bins are (t_k, t_{k+1}]; hits beyond the grid horizon are dropped.
    const auto bin = static_cast<std::int64_t>(
        std::ceil(rec.time / grid.dt)) - 1;
    if (bin >= grid.n_steps) continue;
    ++counts[std::max<std::int64_t>(bin, 0)];
  }
  HittingCurve c;
  c.grid = grid;
  c.step_prob.resize(grid.n_steps);
  c.cumulative.resize(grid.n_steps);
  double run = 0.0;
  for (Eigen::Index k = 0; k < grid.n_steps; ++k) {
    c.step_prob[k] = static_cast<double>(counts[k]) /
                     static_cast<double>(n_molecules);
    run += c.step_prob[k];
    c.cumulative[k] = run;
  }
  return c;
}

}  // namespace mcvd
