// mcvd: channel models for molecular communication via diffusion.
//
// Subcommands: siso, simo, simulate, compare, sweep. Every file output gets
// a flat key=value .manifest sidecar recording the exact run parameters.
// Exit codes: 0 success, 2 invalid input, 3 series divergence, 4 I/O.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mcvd/closed_form.hpp"
#include "mcvd/csv.hpp"
#include "mcvd/metrics.hpp"
#include "mcvd/montecarlo.hpp"
#include "mcvd/recursive.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kDefaultDiffusion = 79.4;  // um^2/s

using namespace mcvd;

// ---------------------------------------------------------------------------
// Shared option plumbing

std::string resolve_out(const std::string& path) {
  if (path.empty()) return path;
  const char* dir = std::getenv("MCVD_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(dir) / p).string();
}

std::vector<double> parse_tuple(const std::string& text, std::size_t arity,
                                const std::string& what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      values.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw CLI::ValidationError(what, "bad number '" + cell + "'");
    }
  }
  if (values.size() != arity)
    throw CLI::ValidationError(
        what, "expected " + std::to_string(arity) + " comma-separated values");
  return values;
}

PlanarSpec2Rx scenario_spec(int which, double diffusion) {
  switch (which) {
    case 1: return {2, 5, 6, 16, 0, diffusion};
    case 2: return {5, 2, 9, 19, 0, diffusion};
    case 3: return {5, 5, 9, 22, 0, diffusion};
    default:
      throw CLI::ValidationError("--scenario", "must be 1, 2 or 3");
  }
}

double parse_angle_rad(const std::string& text, const PlanarSpec2Rx& spec) {
  if (text == "half-eclipse") return half_eclipse_angle(spec);
  if (text == "no-eclipse") return no_eclipse_angle(spec);
  try {
    return std::stod(text) * M_PI / 180.0;
  } catch (const std::exception&) {
    throw CLI::ValidationError(
        "--angle", "expected degrees, 'half-eclipse' or 'no-eclipse'");
  }
}

struct TopologyOptions {
  int scenario = 0;
  std::string angle = "90";
  std::string spec_tuple;
  std::string tx_tuple;
  std::vector<std::string> rx_tuples;
  double diffusion = kDefaultDiffusion;
  CLI::Option* angle_opt = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--scenario", scenario,
                    "Preset planar layout 1, 2 or 3");
    angle_opt = cmd->add_option(
        "--angle", angle,
        "Separation angle: degrees, 'half-eclipse' or 'no-eclipse' (with "
        "--scenario/--spec)");
    cmd->add_option("--spec", spec_tuple,
                    "Planar pair r1,r2,r01,r02,phi_deg");
    cmd->add_option("--tx", tx_tuple, "Transmitter x,y,z (um)");
    cmd->add_option("--rx", rx_tuples,
                    "Receiver cx,cy,cz,radius (um); repeatable");
    cmd->add_option("--D", diffusion, "Diffusion coefficient (um^2/s)")
        ->capture_default_str();
  }

  Topology build(Manifest& manifest) const {
    Topology topology;
    if (scenario != 0 || !spec_tuple.empty()) {
      PlanarSpec2Rx spec;
      if (scenario != 0) {
        spec = scenario_spec(scenario, diffusion);
        spec.phi = parse_angle_rad(angle, spec);
        manifest.emplace_back("scenario", format_int(scenario));
      } else {
        const auto v = parse_tuple(spec_tuple, 5, "--spec");
        spec = {v[0], v[1], v[2], v[3], v[4] * M_PI / 180.0, diffusion};
        if (angle_opt != nullptr && angle_opt->count() > 0)
          spec.phi = parse_angle_rad(angle, spec);
      }
      manifest.emplace_back("r1", format_double(spec.r1));
      manifest.emplace_back("r2", format_double(spec.r2));
      manifest.emplace_back("r01", format_double(spec.r01));
      manifest.emplace_back("r02", format_double(spec.r02));
      manifest.emplace_back("phi_deg",
                            format_double(spec.phi * 180.0 / M_PI));
      topology = build_planar_2rx(spec);
    } else if (!rx_tuples.empty()) {
      topology.diffusion = diffusion;
      if (!tx_tuple.empty()) {
        const auto v = parse_tuple(tx_tuple, 3, "--tx");
        topology.tx = Vec3(v[0], v[1], v[2]);
      }
      for (const std::string& text : rx_tuples) {
        const auto v = parse_tuple(text, 4, "--rx");
        topology.receivers.push_back({Vec3(v[0], v[1], v[2]), v[3]});
      }
      validate(topology);
    } else {
      throw CLI::ValidationError(
          "topology", "give --scenario, --spec or --tx/--rx options");
    }
    manifest.emplace_back("D", format_double(topology.diffusion));
    manifest.emplace_back("tx", format_double(topology.tx.x()) + "," +
                                    format_double(topology.tx.y()) + "," +
                                    format_double(topology.tx.z()));
    for (std::size_t i = 0; i < topology.receivers.size(); ++i) {
      const Receiver& rx = topology.receivers[i];
      manifest.emplace_back(
          "rx" + std::to_string(i + 1),
          format_double(rx.center.x()) + "," + format_double(rx.center.y()) +
              "," + format_double(rx.center.z()) + "," +
              format_double(rx.radius));
    }
    return topology;
  }
};

Manifest base_manifest(const std::string& command, int argc, char** argv) {
  Manifest m;
  m.emplace_back("command", command);
  std::string full;
  for (int i = 0; i < argc; ++i) {
    if (i) full += ' ';
    full += argv[i];
  }
  m.emplace_back("argv", full);
  m.emplace_back("version", kVersion);
  return m;
}

void finish_output(const std::string& out_path, Manifest manifest) {
  manifest.emplace_back("out", out_path);
  write_manifest(out_path + ".manifest", manifest);
}

TimeGrid make_grid(double dt, double horizon) {
  const auto n = static_cast<Eigen::Index>(std::llround(horizon / dt));
  return {dt, std::max<Eigen::Index>(n, 1)};
}

void warn_negative_mass(const std::vector<HittingCurve>& curves) {
  for (std::size_t i = 0; i < curves.size(); ++i)
    if (curves[i].negative_mass > 1e-9)
      std::cerr << "warning: clamped negative step mass "
                << format_double(curves[i].negative_mass) << " on receiver "
                << i + 1 << " (coarse dt for this topology)\n";
}

// ---------------------------------------------------------------------------
// siso

struct SisoArgs {
  double r0 = 15.0, rr = 6.0, D = kDefaultDiffusion;
  double dt = 1e-3, horizon = 5.0;
  std::string out = "siso.csv";
};

void run_siso(const SisoArgs& args, Manifest manifest) {
  const SisoParams params{args.r0, args.rr, args.D};
  validate(params);
  const TimeGrid grid = make_grid(args.dt, args.horizon);
  std::vector<std::vector<double>> cols(3);
  for (Eigen::Index k = 0; k < grid.n_steps; ++k) {
    const double t = grid.t_end(k);
    cols[0].push_back(t);
    cols[1].push_back(siso_pdf(t, params));
    cols[2].push_back(siso_cdf(t, params));
  }
  const std::string out = resolve_out(args.out);
  write_csv_file(out, {"t", "pdf", "cdf"}, cols);
  manifest.emplace_back("r0", format_double(args.r0));
  manifest.emplace_back("rr", format_double(args.rr));
  manifest.emplace_back("D", format_double(args.D));
  manifest.emplace_back("dt", format_double(grid.dt));
  manifest.emplace_back("n_steps", format_int(grid.n_steps));
  finish_output(out, std::move(manifest));
}

// ---------------------------------------------------------------------------
// simo

struct SimoArgs {
  TopologyOptions topology;
  std::string model = "recursive";
  double dt = 1e-3, horizon = 5.0, eps = 1e-12;
  std::string out = "simo.csv";
};

void run_simo(const SimoArgs& args, Manifest manifest) {
  const Topology topology = args.topology.build(manifest);
  const TimeGrid grid = make_grid(args.dt, args.horizon);
  const auto n_rx = static_cast<int>(topology.receivers.size());

  std::vector<std::string> header{"t"};
  std::vector<std::vector<double>> cols(1);
  for (Eigen::Index k = 0; k < grid.n_steps; ++k)
    cols[0].push_back(grid.t_end(k));

  if (args.model == "recursive") {
    const auto curves = recursive_nrx(topology, grid);
    warn_negative_mass(curves);
    for (int i = 0; i < n_rx; ++i) {
      header.push_back("rx" + std::to_string(i + 1) + "_step");
      header.push_back("rx" + std::to_string(i + 1) + "_cum");
      cols.emplace_back(curves[i].step_prob.data(),
                        curves[i].step_prob.data() + grid.n_steps);
      cols.emplace_back(curves[i].cumulative.data(),
                        curves[i].cumulative.data() + grid.n_steps);
    }
  } else if (args.model == "closed" || args.model == "approx") {
    if (n_rx != 2)
      throw TopologyError("model '" + args.model +
                          "' requires exactly two receivers");
    for (int i = 0; i < n_rx; ++i) {
      header.push_back("rx" + std::to_string(i + 1) + "_pdf");
      header.push_back("rx" + std::to_string(i + 1) + "_cum");
      std::vector<double> pdf_col, cum_col;
      pdf_col.reserve(grid.n_steps);
      cum_col.reserve(grid.n_steps);
      if (args.model == "closed") {
        const ClosedFormModel model = build_series(topology, i, args.eps);
        for (Eigen::Index k = 0; k < grid.n_steps; ++k) {
          pdf_col.push_back(eval_pdf(model, grid.t_end(k)));
          cum_col.push_back(eval_cdf(model, grid.t_end(k)));
        }
      } else {
        for (Eigen::Index k = 0; k < grid.n_steps; ++k) {
          pdf_col.push_back(approx_pdf(topology, i, grid.t_end(k)));
          cum_col.push_back(approx_cdf(topology, i, grid.t_end(k)));
        }
      }
      cols.push_back(std::move(pdf_col));
      cols.push_back(std::move(cum_col));
    }
  } else {
    throw CLI::ValidationError("--model",
                               "must be recursive, closed or approx");
  }

  const std::string out = resolve_out(args.out);
  write_csv_file(out, header, cols);
  manifest.emplace_back("model", args.model);
  manifest.emplace_back("dt", format_double(grid.dt));
  manifest.emplace_back("n_steps", format_int(grid.n_steps));
  manifest.emplace_back("eps", format_double(args.eps));
  finish_output(out, std::move(manifest));
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  TopologyOptions topology;
  std::string preset;
  std::int64_t n_molecules = 50000;
  double dt = 1e-4, horizon = 5.0, curve_dt = 1e-3;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out = "mc.csv";
  std::string records_out;
  std::vector<std::string> heatmap_spec;
  std::string heatmap_out;
};

void write_records_csv(const std::string& path,
                       const std::vector<HitRecord>& records) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::ios_base::failure("cannot open for writing: " + path);
  os << "molecule,time_s,x_um,y_um,z_um,rx\n";
  for (const HitRecord& rec : records)
    os << format_int(rec.molecule) << ',' << format_double(rec.time) << ','
       << format_double(rec.point.x()) << ',' << format_double(rec.point.y())
       << ',' << format_double(rec.point.z()) << ',' << rec.receiver + 1
       << '\n';
  if (!os) throw std::ios_base::failure("write failed: " + path);
}

void run_simulate(SimulateArgs args, const CLI::App* cmd, Manifest manifest) {
  if (args.preset == "fig23") {
    args.topology.scenario = 0;
    args.topology.spec_tuple = "6,3,15,9,120";
  } else if (args.preset == "fig4") {
    args.topology.tx_tuple = "0,0,12";
    args.topology.rx_tuples = {"0,0,0,4"};
    if (cmd->count("--N") == 0) args.n_molecules = 50000;
    if (cmd->count("--dt") == 0) args.dt = 1e-4;
    if (cmd->count("--D") == 0) args.topology.diffusion = kDefaultDiffusion;
  } else if (!args.preset.empty()) {
    throw CLI::ValidationError("--preset", "must be fig4 or fig23");
  }
  if (!args.preset.empty()) manifest.emplace_back("preset", args.preset);

  const Topology topology = args.topology.build(manifest);
  SimConfig config{args.n_molecules, args.dt,      args.horizon, args.seed,
                   topology.diffusion, args.curve_dt, args.threads};
  const SimResult result = simulate(topology, config);

  std::vector<std::string> header{"t"};
  std::vector<std::vector<double>> cols(1);
  const TimeGrid& grid = result.curves.front().grid;
  for (Eigen::Index k = 0; k < grid.n_steps; ++k)
    cols[0].push_back(grid.t_end(k));
  for (std::size_t i = 0; i < result.curves.size(); ++i) {
    header.push_back("rx" + std::to_string(i + 1) + "_step");
    header.push_back("rx" + std::to_string(i + 1) + "_cum");
    cols.emplace_back(result.curves[i].step_prob.data(),
                      result.curves[i].step_prob.data() + grid.n_steps);
    cols.emplace_back(result.curves[i].cumulative.data(),
                      result.curves[i].cumulative.data() + grid.n_steps);
  }
  const std::string out = resolve_out(args.out);
  write_csv_file(out, header, cols);

  manifest.emplace_back("N", format_int(config.n_molecules));
  manifest.emplace_back("dt", format_double(config.dt));
  manifest.emplace_back("T", format_double(config.horizon));
  manifest.emplace_back("curve_dt", format_double(config.curve_dt));
  manifest.emplace_back("seed", format_int(static_cast<std::int64_t>(
                                    config.seed)));
  manifest.emplace_back("threads", format_int(config.n_threads));

  if (!args.records_out.empty()) {
    const std::string records_path = resolve_out(args.records_out);
    write_records_csv(records_path, result.records);
    manifest.emplace_back("records_out", records_path);
  }

  if (!args.heatmap_spec.empty()) {
    int rx = -1, bins = 0;
    for (const std::string& token : args.heatmap_spec) {
      const auto eq = token.find('=');
      if (eq == std::string::npos)
        throw CLI::ValidationError("--heatmap", "expected rx=K bins=M");
      const std::string key = token.substr(0, eq);
      const int value = std::stoi(token.substr(eq + 1));
      if (key == "rx")
        rx = value - 1;  // 1-based on the command line
      else if (key == "bins")
        bins = value;
      else
        throw CLI::ValidationError("--heatmap", "unknown key '" + key + "'");
    }
    if (rx < 0 || bins <= 0)
      throw CLI::ValidationError("--heatmap", "expected rx=K bins=M");
    const auto counts = heatmap(result.records, topology, rx, bins);
    std::string heat_path = args.heatmap_out;
    if (heat_path.empty()) {
      std::filesystem::path p(args.out);
      p.replace_extension();
      heat_path = p.string() + "_heatmap.csv";
    }
    heat_path = resolve_out(heat_path);
    std::vector<std::vector<double>> heat_cols(3);
    for (int b = 0; b < bins; ++b) {
      heat_cols[0].push_back(b * M_PI / bins);
      heat_cols[1].push_back((b + 1) * M_PI / bins);
      heat_cols[2].push_back(static_cast<double>(counts[b]));
    }
    write_csv_file(heat_path, {"theta_lo", "theta_hi", "count"}, heat_cols);
    manifest.emplace_back("heatmap_out", heat_path);
    manifest.emplace_back("heatmap_rx", format_int(rx + 1));
    manifest.emplace_back("heatmap_bins", format_int(bins));
  }

  finish_output(out, std::move(manifest));
}

// ---------------------------------------------------------------------------
// compare

struct CompareArgs {
  std::string a, b, out;
};

void run_compare(const CompareArgs& args, Manifest manifest) {
  const CsvTable ta = read_csv_file(args.a);
  const CsvTable tb = read_csv_file(args.b);
  if (ta.rows() != tb.rows())
    throw GridError("row count mismatch: " + std::to_string(ta.rows()) +
                    " vs " + std::to_string(tb.rows()));
  if (ta.rows() < 2) throw GridError("need at least two samples");
  const int time_a = ta.column_index("t");
  const int time_b = tb.column_index("t");
  if (time_a >= 0 && time_b >= 0)
    for (std::size_t r = 0; r < ta.rows(); ++r) {
      const double u = ta.data[time_a][r], v = tb.data[time_b][r];
      if (std::abs(u - v) > 1e-12 * std::max(1.0, std::abs(u)))
        throw GridError("time grids differ at row " + std::to_string(r) +
                        ": " + format_double(u) + " vs " + format_double(v));
    }

  // Compare every cumulative-style column the two files share.
  std::ostringstream body;
  body << "column,rms,max_abs,pearson,n_points\n";
  int matched = 0;
  for (std::size_t c = 0; c < ta.columns.size(); ++c) {
    const std::string& name = ta.columns[c];
    const bool cumulative_like =
        name == "cdf" ||
        (name.size() > 4 && name.compare(name.size() - 4, 4, "_cum") == 0);
    if (!cumulative_like) continue;
    const int cb = tb.column_index(name);
    if (cb < 0) continue;
    ++matched;
    HittingCurve ca, cbv;
    const auto n = static_cast<Eigen::Index>(ta.rows());
    ca.grid = cbv.grid = TimeGrid{1.0, n};
    ca.cumulative = Eigen::Map<const Eigen::ArrayXd>(ta.data[c].data(), n);
    cbv.cumulative =
        Eigen::Map<const Eigen::ArrayXd>(tb.data[cb].data(), n);
    ca.step_prob = cbv.step_prob = Eigen::ArrayXd::Zero(n);
    const CurveComparison cmp = compare(ca, cbv);
    body << name << ',' << format_double(cmp.rms) << ','
         << format_double(cmp.max_abs) << ',' << format_double(cmp.pearson)
         << ',' << format_int(cmp.n_points) << '\n';
  }
  if (matched == 0)
    throw DataError("no shared cumulative columns ('cdf' or '*_cum')");

  if (args.out.empty()) {
    std::cout << body.str();
  } else {
    const std::string out = resolve_out(args.out);
    std::ofstream os(out, std::ios::binary);
    if (!os) throw std::ios_base::failure("cannot open for writing: " + out);
    os << body.str();
    manifest.emplace_back("a", args.a);
    manifest.emplace_back("b", args.b);
    finish_output(out, std::move(manifest));
  }
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  int scenario = 0;
  std::string spec_tuple;
  double diffusion = kDefaultDiffusion;
  std::string angles = "10:180:10";
  std::string model = "recursive";
  double dt = 1e-3, horizon = 5.0;
  std::int64_t n_molecules = 50000;
  double mc_dt = 1e-4;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out = "sweep.csv";
};

std::vector<double> parse_angle_list(const std::string& text,
                                     const PlanarSpec2Rx& spec) {
  std::vector<double> angles;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    if (token.find(':') != std::string::npos) {
      std::string range = token;
      std::replace(range.begin(), range.end(), ':', ',');
      const auto v = parse_tuple(range, 3, "--angles");
      if (v[2] <= 0)
        throw CLI::ValidationError("--angles", "range step must be > 0");
      for (double a = v[0]; a <= v[1] + 1e-9; a += v[2])
        angles.push_back(a * M_PI / 180.0);
    } else {
      angles.push_back(parse_angle_rad(token, spec));
    }
  }
  return angles;
}

void run_sweep(const SweepArgs& args, const CLI::App* cmd, Manifest manifest) {
  PlanarSpec2Rx spec;
  if (args.scenario != 0) {
    spec = scenario_spec(args.scenario, args.diffusion);
    manifest.emplace_back("scenario", format_int(args.scenario));
  } else if (!args.spec_tuple.empty()) {
    const auto v = parse_tuple(args.spec_tuple, 4, "--spec");
    spec = {v[0], v[1], v[2], v[3], 0, args.diffusion};
  } else {
    throw CLI::ValidationError("sweep", "give --scenario or --spec");
  }

  std::vector<double> angles = parse_angle_list(args.angles, spec);
  if (cmd->count("--angles") == 0) {
    // Default sweep: mark the two eclipse angles as dedicated rows.
    angles.push_back(half_eclipse_angle(spec));
    angles.push_back(no_eclipse_angle(spec));
    std::sort(angles.begin(), angles.end());
  }

  ModelKind kind;
  if (args.model == "recursive") kind = ModelKind::Recursive;
  else if (args.model == "closed") kind = ModelKind::ClosedForm;
  else if (args.model == "approx") kind = ModelKind::Approx;
  else
    throw CLI::ValidationError("--model",
                               "must be recursive, closed or approx");

  const TimeGrid grid = make_grid(args.dt, args.horizon);
  SimConfig oracle{args.n_molecules, args.mc_dt, args.horizon,
                   args.seed,        spec.diffusion, grid.dt,
                   args.threads};
  const auto rows = angle_sweep(spec, angles, kind, oracle, grid);

  std::vector<std::vector<double>> cols(7);
  for (const SweepRow& row : rows) {
    if (!row.ok) {
      std::cerr << "warning: skipping angle "
                << format_double(row.angle_deg) << " deg: " << row.error
                << '\n';
      continue;
    }
    cols[0].push_back(row.angle_deg);
    cols[1].push_back(row.rx1.rms);
    cols[2].push_back(row.rx2.rms);
    cols[3].push_back(row.rx1.max_abs);
    cols[4].push_back(row.rx2.max_abs);
    cols[5].push_back(row.rx1.pearson);
    cols[6].push_back(row.rx2.pearson);
  }
  const std::string out = resolve_out(args.out);
  write_csv_file(out,
                 {"angle_deg", "rms_rx1", "rms_rx2", "maxabs_rx1",
                  "maxabs_rx2", "pearson_rx1", "pearson_rx2"},
                 cols);
  manifest.emplace_back("r1", format_double(spec.r1));
  manifest.emplace_back("r2", format_double(spec.r2));
  manifest.emplace_back("r01", format_double(spec.r01));
  manifest.emplace_back("r02", format_double(spec.r02));
  manifest.emplace_back("D", format_double(spec.diffusion));
  manifest.emplace_back("model", args.model);
  manifest.emplace_back("dt", format_double(args.dt));
  manifest.emplace_back("T", format_double(args.horizon));
  manifest.emplace_back("N", format_int(args.n_molecules));
  manifest.emplace_back("mc_dt", format_double(args.mc_dt));
  manifest.emplace_back("seed",
                        format_int(static_cast<std::int64_t>(args.seed)));
  finish_output(out, std::move(manifest));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Channel models for molecular communication via diffusion: "
               "multi-receiver estimators validated against Brownian-motion "
               "simulation"};
  app.require_subcommand(1);

  SisoArgs siso_args;
  CLI::App* siso_cmd = app.add_subcommand(
      "siso", "Single-receiver hitting rate and cumulative fraction");
  siso_cmd->add_option("--r0", siso_args.r0, "Tx-to-center distance (um)")
      ->capture_default_str();
  siso_cmd->add_option("--rr", siso_args.rr, "Receiver radius (um)")
      ->capture_default_str();
  siso_cmd->add_option("--D", siso_args.D, "Diffusion coefficient (um^2/s)")
      ->capture_default_str();
  siso_cmd->add_option("--dt", siso_args.dt, "Time step (s)")
      ->capture_default_str();
  siso_cmd->add_option("--T", siso_args.horizon, "Horizon (s)")
      ->capture_default_str();
  siso_cmd->add_option("--out", siso_args.out, "Output CSV path")
      ->capture_default_str();

  SimoArgs simo_args;
  CLI::App* simo_cmd = app.add_subcommand(
      "simo", "Multi-receiver channel response (recursive, closed, approx)");
  simo_args.topology.attach(simo_cmd);
  simo_cmd->add_option("--model", simo_args.model,
                       "recursive | closed | approx")
      ->capture_default_str();
  simo_cmd->add_option("--dt", simo_args.dt, "Time step (s)")
      ->capture_default_str();
  simo_cmd->add_option("--T", simo_args.horizon, "Horizon (s)")
      ->capture_default_str();
  simo_cmd->add_option("--eps", simo_args.eps,
                       "Series truncation threshold on amplitudes")
      ->capture_default_str();
  simo_cmd->add_option("--out", simo_args.out, "Output CSV path")
      ->capture_default_str();

  SimulateArgs sim_args;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "Brownian-motion Monte Carlo with absorbing receivers");
  sim_args.topology.attach(sim_cmd);
  sim_cmd->add_option("--preset", sim_args.preset,
                      "fig4 (surface heatmap setup) or fig23 (asymmetric "
                      "pair)");
  sim_cmd->add_option("--N", sim_args.n_molecules, "Molecule count")
      ->capture_default_str();
  sim_cmd->add_option("--dt", sim_args.dt, "Simulation step (s)")
      ->capture_default_str();
  sim_cmd->add_option("--T", sim_args.horizon, "Horizon (s)")
      ->capture_default_str();
  sim_cmd->add_option("--curve-dt", sim_args.curve_dt,
                      "Curve binning step (s)")
      ->capture_default_str();
  sim_cmd->add_option("--seed", sim_args.seed, "RNG seed")
      ->capture_default_str();
  sim_cmd->add_option("--threads", sim_args.threads,
                      "Worker threads (0 = auto; output is identical)")
      ->capture_default_str();
  sim_cmd->add_option("--out", sim_args.out, "Curves CSV path")
      ->capture_default_str();
  sim_cmd->add_option("--records", sim_args.records_out,
                      "Also write per-hit records CSV");
  sim_cmd->add_option("--heatmap", sim_args.heatmap_spec,
                      "Surface histogram, e.g. --heatmap rx=1 bins=24")
      ->expected(2);
  sim_cmd->add_option("--heatmap-out", sim_args.heatmap_out,
                      "Heatmap CSV path (default: <out>_heatmap.csv)");

  CompareArgs cmp_args;
  CLI::App* cmp_cmd = app.add_subcommand(
      "compare", "Error metrics between two curve CSV files");
  cmp_cmd->add_option("--a", cmp_args.a, "First CSV")->required();
  cmp_cmd->add_option("--b", cmp_args.b, "Second CSV")->required();
  cmp_cmd->add_option("--out", cmp_args.out,
                      "Output CSV path (default: stdout)");

  SweepArgs sweep_args;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Model-vs-simulation RMS across separation angles");
  sweep_cmd->add_option("--scenario", sweep_args.scenario,
                        "Preset planar layout 1, 2 or 3");
  sweep_cmd->add_option("--spec", sweep_args.spec_tuple,
                        "Planar pair r1,r2,r01,r02");
  sweep_cmd->add_option("--D", sweep_args.diffusion,
                        "Diffusion coefficient (um^2/s)")
      ->capture_default_str();
  sweep_cmd->add_option(
      "--angles", sweep_args.angles,
      "Comma list of degrees, lo:hi:step ranges, 'half-eclipse', "
      "'no-eclipse' (default adds both eclipse angles)");
  sweep_cmd->add_option("--model", sweep_args.model,
                        "recursive | closed | approx")
      ->capture_default_str();
  sweep_cmd->add_option("--dt", sweep_args.dt, "Model time step (s)")
      ->capture_default_str();
  sweep_cmd->add_option("--T", sweep_args.horizon, "Horizon (s)")
      ->capture_default_str();
  sweep_cmd->add_option("--N", sweep_args.n_molecules,
                        "Molecules per Monte Carlo run")
      ->capture_default_str();
  sweep_cmd->add_option("--mc-dt", sweep_args.mc_dt,
                        "Monte Carlo step (s)")
      ->capture_default_str();
  sweep_cmd->add_option("--seed", sweep_args.seed,
                        "RNG seed (shared across angles)")
      ->capture_default_str();
  sweep_cmd->add_option("--threads", sweep_args.threads,
                        "Worker threads (0 = auto)")
      ->capture_default_str();
  sweep_cmd->add_option("--out", sweep_args.out, "Output CSV path")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    if (siso_cmd->parsed())
      run_siso(siso_args, base_manifest("siso", argc, argv));
    else if (simo_cmd->parsed())
      run_simo(simo_args, base_manifest("simo", argc, argv));
    else if (sim_cmd->parsed())
      run_simulate(sim_args, sim_cmd, base_manifest("simulate", argc, argv));
    else if (cmp_cmd->parsed())
      run_compare(cmp_args, base_manifest("compare", argc, argv));
    else if (sweep_cmd->parsed())
      run_sweep(sweep_args, sweep_cmd, base_manifest("sweep", argc, argv));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const RocError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
