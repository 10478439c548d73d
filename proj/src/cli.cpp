#include "fisherflow/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fisherflow/csv.hpp"
#include "fisherflow/elliptic.hpp"
#include "fisherflow/entropy.hpp"
#include "fisherflow/errors.hpp"
#include "fisherflow/flow.hpp"
#include "fisherflow/geometry.hpp"
#include "fisherflow/spectral.hpp"

namespace fisherflow {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

const std::set<std::string>& known_commands() {
  static const std::set<std::string> cmds{"flow", "entropy", "phase",
                                          "spectral", "check"};
  return cmds;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void bad_value(int line, const std::string& key) {
  throw ConfigError("line " + std::to_string(line) + ": bad value for '" +
                    key + "'");
}

double parse_double(const std::string& v, int line, const std::string& key) {
  double out = 0.0;
  const char* begin = v.data();
  const char* end = v.data() + v.size();
  const auto res = std::from_chars(begin, end, out);
  if (res.ec != std::errc() || res.ptr != end) bad_value(line, key);
  return out;
}

int parse_int(const std::string& v, int line, const std::string& key) {
  int out = 0;
  const char* begin = v.data();
  const char* end = v.data() + v.size();
  const auto res = std::from_chars(begin, end, out);
  if (res.ec != std::errc() || res.ptr != end) bad_value(line, key);
  return out;
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true") return true;
  if (v == "false") return false;
  bad_value(line, key);
}

// Returns false when the key is unknown.
bool assign_key(RunConfig& cfg, const std::string& key,
                const std::string& value, int line) {
  if (key == "family") cfg.family = value;
  else if (key == "n") cfg.n = parse_int(value, line, key);
  else if (key == "L") cfg.length = parse_double(value, line, key);
  else if (key == "dim") cfg.dim = parse_int(value, line, key);
  else if (key == "c0") cfg.c0 = parse_double(value, line, key);
  else if (key == "phi0_amplitude")
    cfg.phi0_amplitude = parse_double(value, line, key);
  else if (key == "phi0_mode") cfg.phi0_mode = parse_int(value, line, key);
  else if (key == "u0_amplitude")
    cfg.u0_amplitude = parse_double(value, line, key);
  else if (key == "u0_mode") cfg.u0_mode = parse_int(value, line, key);
  else if (key == "dt") cfg.dt = parse_double(value, line, key);
  else if (key == "t_end") cfg.t_end = parse_double(value, line, key);
  else if (key == "snapshot_every")
    cfg.snapshot_every = parse_int(value, line, key);
  else if (key == "safety") cfg.safety = parse_double(value, line, key);
  else if (key == "conjugate_heat")
    cfg.conjugate_heat = parse_bool(value, line, key);
  else if (key == "p_amplitude")
    cfg.p_amplitude = parse_double(value, line, key);
  else if (key == "p_mode") cfg.p_mode = parse_int(value, line, key);
  else if (key == "r_amplitude")
    cfg.r_amplitude = parse_double(value, line, key);
  else if (key == "r_mode") cfg.r_mode = parse_int(value, line, key);
  else if (key == "kappa") cfg.kappa = parse_double(value, line, key);
  else if (key == "m") cfg.mass_param = parse_double(value, line, key);
  else if (key == "hbar") cfg.hbar = parse_double(value, line, key);
  else if (key == "tol") cfg.tol = parse_double(value, line, key);
  else if (key == "max_iter") cfg.max_iter = parse_int(value, line, key);
  else if (key == "gauge") cfg.gauge = value;
  else if (key == "out_dir") cfg.out_dir = value;
  else if (key == "write_fields")
    cfg.write_fields = parse_bool(value, line, key);
  else return false;
  return true;
}

void validate_config(const RunConfig& cfg) {
  const auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (known_commands().count(cfg.command) == 0)
    fail("unknown command '" + cfg.command + "'");
  const bool needs_flow = cfg.command == "flow" || cfg.command == "entropy";
  if (cfg.family != "sphere" && cfg.family != "torus" &&
      cfg.family != "circle" && cfg.family != "interval")
    fail("unknown family '" + cfg.family + "'");
  if (cfg.n < 3) fail("n must be at least 3");
  if (!(cfg.length > 0.0)) fail("L must be positive");
  if (cfg.dim < 2) fail("dim must be at least 2");
  if (!(cfg.c0 > 0.0)) fail("c0 must be positive");
  if (needs_flow) {
    if (!(cfg.dt > 0.0)) fail("dt must be positive");
    if (!(cfg.t_end > 0.0)) fail("t_end must be positive");
  }
  if (cfg.snapshot_every < 1) fail("snapshot_every must be at least 1");
  if (!(cfg.safety > 0.0) || cfg.safety > 1.0)
    fail("safety must lie in (0, 1]");
  if (std::abs(cfg.u0_amplitude) >= 1.0)
    fail("u0_amplitude must have magnitude below 1");
  if (std::abs(cfg.p_amplitude) >= 1.0)
    fail("p_amplitude must have magnitude below 1");
  if (!(cfg.mass_param > 0.0)) fail("m must be positive");
  if (!(cfg.hbar > 0.0)) fail("hbar must be positive");
  if (cfg.kappa < 0.0) fail("kappa must be nonnegative");
  if (!(cfg.tol > 0.0)) fail("tol must be positive");
  if (cfg.max_iter < 1) fail("max_iter must be at least 1");
  if (cfg.gauge != "none" && cfg.gauge != "zero_mean")
    fail("gauge must be 'none' or 'zero_mean'");
  if (cfg.command == "entropy") {
    if (cfg.snapshot_every != 1) fail("entropy requires snapshot_every = 1");
    if (cfg.family != "sphere" && cfg.family != "torus")
      fail("entropy supports the sphere and torus families");
  }
  if (cfg.command == "phase" && cfg.family == "sphere")
    fail("phase solves need a grid-backed family");
  if (cfg.command == "spectral" && cfg.family == "circle")
    fail("spectral supports interval, torus, and sphere examples");
  if (cfg.command == "spectral" && cfg.family == "torus" &&
      cfg.phi0_amplitude != 0.0)
    fail("spectral torus bounds assume the flat metric (phi0_amplitude 0)");
}

double wave_value(double amplitude, int mode, double x, double length,
                  bool sine) {
  if (mode == 0) return amplitude;
  const double arg = kTau * mode * x / length;
  return amplitude * (sine ? std::sin(arg) : std::cos(arg));
}

MetricState build_metric(const RunConfig& cfg) {
  if (cfg.family == "sphere")
    return MetricState(HomogeneousEinstein{cfg.dim, cfg.c0});
  if (cfg.family == "torus") {
    const ManifoldGrid g =
        ManifoldGrid::torus(cfg.n, cfg.n, cfg.length, cfg.length);
    return MetricState(Conformal2D{ScalarField::sample(
        g, std::function<double(double, double)>([&](double x, double) {
          return wave_value(cfg.phi0_amplitude, cfg.phi0_mode, x, cfg.length,
                            true);
        }))});
  }
  const ManifoldGrid g = cfg.family == "circle"
                             ? ManifoldGrid::circle(cfg.n, cfg.length)
                             : ManifoldGrid::interval(cfg.n, cfg.length);
  return MetricState(Prescribed1D{ScalarField::sample(
      g, std::function<double(double)>([&](double x) {
        return wave_value(cfg.r_amplitude, cfg.r_mode, x, cfg.length, false);
      }))});
}

DensityField build_terminal_density(const RunConfig& cfg,
                                    const MetricState& final_metric) {
  if (cfg.family == "sphere")
    return normalize_density(
        ScalarField::constant(ManifoldGrid::sphere_token(), 1.0),
        final_metric);
  const ManifoldGrid& g = final_metric.grid();
  ScalarField raw = ScalarField::constant(g, 1.0);
  if (cfg.u0_amplitude != 0.0) {
    if (g.axes() == 2)
      raw = ScalarField::sample(
          g, std::function<double(double, double)>([&](double x, double) {
            return 1.0 + wave_value(cfg.u0_amplitude, cfg.u0_mode, x,
                                    cfg.length, false);
          }));
    else
      raw = ScalarField::sample(
          g, std::function<double(double)>([&](double x) {
            return 1.0 + wave_value(cfg.u0_amplitude, cfg.u0_mode, x,
                                    cfg.length, false);
          }));
  }
  return normalize_density(raw, final_metric);
}

std::filesystem::path prepare_out_dir(const RunConfig& cfg) {
  const std::filesystem::path dir(cfg.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!std::filesystem::is_directory(dir))
    throw ConfigError("cannot create output directory: " + cfg.out_dir);
  return dir;
}

std::string snapshot_name(const char* quantity, std::size_t k) {
  std::ostringstream name;
  name << quantity << '_' << std::setw(4) << std::setfill('0') << k << ".csv";
  return name.str();
}

void write_snapshots(const FlowTrajectory& traj,
                     const std::filesystem::path& dir) {
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const MetricState& m = traj.metrics[k];
    if (m.family() == MetricFamily::conformal2d)
      write_field_csv((dir / snapshot_name("phi", k)).string(),
                      m.conformal().log_conformal);
    if (traj.has_densities() && traj.metrics[k].grid_backed())
      write_field_csv((dir / snapshot_name("u", k)).string(),
                      traj.densities[k].field);
  }
}

FlowTrajectory run_flow_pipeline(const RunConfig& cfg) {
  const MetricState initial = build_metric(cfg);
  FlowConfig fc;
  fc.t_end = cfg.t_end;
  fc.dt = cfg.dt;
  fc.snapshot_every = cfg.snapshot_every;
  fc.safety_factor = cfg.safety;
  FlowTrajectory traj = flow_run(initial, fc);
  if (cfg.conjugate_heat || cfg.command == "entropy") {
    const DensityField terminal =
        build_terminal_density(cfg, traj.metrics.back());
    traj = conjugate_heat_backward(traj, terminal);
  }
  return traj;
}

int run_flow(const RunConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  const FlowTrajectory traj = run_flow_pipeline(cfg);
  write_trajectory_csv((dir / "trajectory.csv").string(), traj);
  if (cfg.write_fields) write_snapshots(traj, dir);
  return 0;
}

int run_entropy(const RunConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  const FlowTrajectory traj = run_flow_pipeline(cfg);
  const std::vector<EntropyReport> reports =
      trajectory_reports(traj, PhysicsParams{cfg.mass_param, cfg.hbar});
  const std::vector<MonotonicityRow> rows = monotonicity_scan(traj);
  write_entropy_csv((dir / "entropy.csv").string(), traj, reports, rows);
  if (cfg.write_fields) write_snapshots(traj, dir);
  return 0;
}

int run_phase(const RunConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  const MetricState metric = build_metric(cfg);
  const ManifoldGrid& grid = metric.grid();
  ScalarField p_raw = ScalarField::constant(grid, 1.0);
  if (grid.axes() == 2)
    p_raw = ScalarField::sample(
        grid, std::function<double(double, double)>([&](double x, double) {
          return 1.0 +
                 wave_value(cfg.p_amplitude, cfg.p_mode, x, cfg.length, true);
        }));
  else
    p_raw = ScalarField::sample(
        grid, std::function<double(double)>([&](double x) {
          return 1.0 +
                 wave_value(cfg.p_amplitude, cfg.p_mode, x, cfg.length, true);
        }));
  const DensityField p(std::move(p_raw));
  const Gauge gauge =
      cfg.gauge == "zero_mean" ? Gauge::zero_mean : Gauge::none;
  const WeakSystem sys =
      assemble_weak(p, metric, cfg.mass_param, cfg.kappa, gauge);
  const SolveReport rep = solve(sys, cfg.tol, cfg.max_iter);
  write_solve_report_csv((dir / "solve_report.csv").string(), rep);
  write_field_csv((dir / "solution.csv").string(), rep.solution);
  if (cfg.write_fields) {
    write_field_csv((dir / "density.csv").string(), p.field);
    write_field_csv((dir / "curvature.csv").string(),
                    scalar_curvature(metric));
  }
  return 0;
}

int run_spectral(const RunConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  if (cfg.family == "sphere") {
    const double lambda1 = cfg.dim / cfg.c0;
    const SpectralReport rep =
        bound_report(RoundSphere{cfg.dim, cfg.c0}, lambda1);
    write_spectral_csv((dir / "spectral.csv").string(), rep);
    return 0;
  }
  if (cfg.family == "torus") {
    const ManifoldGrid g =
        ManifoldGrid::torus(cfg.n, cfg.n, cfg.length, cfg.length);
    const EigenEstimate est =
        lambda1_mode(flat_metric(g), Boundary::periodic);
    const SpectralReport rep =
        bound_report(FlatTorus{cfg.length}, est.lambda1);
    write_spectral_csv((dir / "spectral.csv").string(), rep);
    if (cfg.write_fields)
      write_field_csv((dir / "mode.csv").string(), est.mode);
    return 0;
  }
  const ManifoldGrid g = ManifoldGrid::interval(cfg.n, cfg.length);
  const EigenEstimate est =
      lambda1_mode(flat_metric(g), Boundary::dirichlet_zero);
  const SpectralReport rep = bound_report(DirichletInterval{g}, est.lambda1);
  write_spectral_csv((dir / "spectral.csv").string(), rep);
  if (cfg.write_fields)
    write_field_csv((dir / "mode.csv").string(), est.mode);
  return 0;
}

// ---- invariant check suite -------------------------------------------------

struct CheckRow {
  std::string name;
  double value = 0.0;      // measured quantity
  double threshold = 0.0;  // bound it is compared against
  bool pass = false;
};

Mat3 random_spd(std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Mat3 m;
  for (double& v : m) v = dist(rng);
  Mat3 spd{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += m[k * 3 + i] * m[k * 3 + j];
      spd[i * 3 + j] = acc;
    }
  for (int i = 0; i < 3; ++i) spd[i * 3 + i] += 0.5;
  return spd;
}

CheckRow check_det_identity() {
  std::mt19937 rng(4242u);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Mat3 a = random_spd(rng);
    const Mat3 b = random_spd(rng);
    const DetDerivative d = det_derivative_check(a, b);
    const double err =
        std::abs(d.analytic - d.numeric) / (1.0 + std::abs(d.analytic));
    worst = std::max(worst, err);
  }
  return {"det_identity_max_err", worst, 1e-6, worst <= 1e-6};
}

struct SplitCase {
  MetricState metric;
  DensityField u;
};

SplitCase torus_case() {
  const ManifoldGrid g = ManifoldGrid::torus(32, 32, 1.0, 1.0);
  MetricState metric(Conformal2D{ScalarField::sample(
      g, std::function<double(double, double)>([](double x, double) {
        return 0.05 * std::sin(kTau * x);
      }))});
  const ScalarField raw = ScalarField::sample(
      g, std::function<double(double, double)>([](double x, double y) {
        return 1.0 + 0.3 * std::sin(kTau * x) * std::cos(kTau * y);
      }));
  DensityField u = normalize_density(raw, metric);
  return {std::move(metric), std::move(u)};
}

SplitCase circle_case() {
  const ManifoldGrid g = ManifoldGrid::circle(64, 1.0);
  MetricState metric(Prescribed1D{ScalarField::sample(
      g, std::function<double(double)>(
             [](double x) { return std::cos(kTau * x); }))});
  const ScalarField raw = ScalarField::sample(
      g, std::function<double(double)>(
             [](double x) { return 1.0 + 0.4 * std::sin(kTau * x); }));
  DensityField u = normalize_density(raw, metric);
  return {std::move(metric), std::move(u)};
}

CheckRow check_fisher_split(const std::string& name, const SplitCase& c) {
  const double perelman = perelman_functional(c.u, c.metric);
  const double fisher = fisher_information(c.u, c.metric);
  const double curv = curvature_average(c.u, c.metric);
  const double rel =
      std::abs(perelman - (fisher + curv)) / (1.0 + std::abs(perelman));
  return {name, rel, 1e-10, rel <= 1e-10};
}

CheckRow check_mean_q(const std::string& name, const SplitCase& c) {
  const PhysicsParams params{1.3, 0.7};
  const double fisher = fisher_information(c.u, c.metric);
  const double mean_q = mean_quantum_potential(c.u, c.metric, params);
  const double expected =
      -params.hbar * params.hbar / (8.0 * params.mass) * fisher;
  const double rel = std::abs(mean_q - expected) / (1.0 + std::abs(mean_q));
  return {name, rel, 1e-8, rel <= 1e-8};
}

void check_sphere_flow(std::vector<CheckRow>& rows) {
  FlowConfig fc;
  fc.t_end = 0.2;
  fc.dt = 1e-3;
  const FlowTrajectory traj =
      flow_run(MetricState(HomogeneousEinstein{3, 1.0}), fc);
  double scale_err = 0.0;
  double vol_res = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const SphereExact ex = sphere_exact(3, 1.0, traj.times[k]);
    scale_err =
        std::max(scale_err, std::abs(traj.metrics[k].sphere().scale - ex.c));
    vol_res = std::max(vol_res, traj.volume_residuals[k]);
  }
  rows.push_back(
      {"sphere_scale_max_err", scale_err, 1e-8, scale_err <= 1e-8});
  rows.push_back(
      {"sphere_volume_residual", vol_res, 1e-8, vol_res <= 1e-8});
}

double phase_oracle_error(int n) {
  const ManifoldGrid g = ManifoldGrid::interval(n, 1.0);
  const ScalarField p = ScalarField::sample(
      g, std::function<double(double)>(
             [](double x) { return 1.0 + 0.5 * std::sin(kTau * x); }));
  const ScalarField r = ScalarField::sample(
      g, std::function<double(double)>(
             [](double x) { return std::cos(kTau * x); }));
  const ScalarField oracle = oracle_1d_phase(p, r, 0.0, 0.0);
  const MetricState metric(Prescribed1D{r});
  const WeakSystem sys =
      assemble_weak(DensityField(p), metric, 1.0, 0.0, Gauge::none,
                    {oracle.values.front(), oracle.values.back()});
  const SolveReport rep = solve(sys, 1e-12, 20000);
  const double h = g.spacing(0);
  double acc = 0.0;
  for (int i = 1; i < g.nodes(0) - 1; ++i) {
    const double d = rep.solution.values[i] - oracle.values[i];
    acc += d * d * h;
  }
  return std::sqrt(acc);
}

CheckRow check_phase_oracle() {
  const double e64 = phase_oracle_error(64);
  const double e128 = phase_oracle_error(128);
  const double order = std::log2(e64 / e128);
  return {"phase_oracle_order", order, 1.9, order >= 1.9};
}

CheckRow check_quadratic_identity() {
  const ManifoldGrid g = ManifoldGrid::torus(32, 32, 1.0, 1.0);
  const MetricState metric = flat_metric(g);
  std::mt19937 rng(99u);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<double> v(g.node_count());
    for (double& x : v) x = dist(rng);
    const ScalarField f(g, std::move(v));
    const ScalarField lap = laplace_beltrami(f, metric);
    const ScalarField gs = gradient_sq(f, metric);
    ScalarField minus_lap_f = f;
    for (std::size_t k = 0; k < minus_lap_f.values.size(); ++k)
      minus_lap_f.values[k] = -lap.values[k] * f.values[k];
    const double lhs = integrate(minus_lap_f, metric);
    const double rhs = integrate(gs, metric);
    const double rel = std::abs(lhs - rhs) / std::abs(rhs);
    worst = std::max(worst, rel);
  }
  return {"quadratic_identity_max_rel", worst, 1e-8, worst <= 1e-8};
}

CheckRow check_friedrich() {
  const ManifoldGrid g = ManifoldGrid::interval(64, 1.0);
  const EigenEstimate est =
      lambda1_mode(flat_metric(g), Boundary::dirichlet_zero);
  const SpectralReport rep = bound_report(DirichletInterval{g}, est.lambda1);
  bool all_hold = true;
  for (const BoundCheck& check : rep.checks)
    if (check.status != CheckStatus::holds) all_hold = false;
  return {"friedrich_interval", est.lambda1, 0.0, all_hold};
}

std::vector<CheckRow> run_check_suite() {
  std::vector<CheckRow> rows;
  rows.push_back(check_det_identity());
  const SplitCase torus = torus_case();
  const SplitCase circle = circle_case();
  rows.push_back(check_fisher_split("fisher_split_torus", torus));
  rows.push_back(check_fisher_split("fisher_split_circle", circle));
  rows.push_back(check_mean_q("mean_q_torus", torus));
  rows.push_back(check_mean_q("mean_q_circle", circle));
  check_sphere_flow(rows);
  rows.push_back(check_phase_oracle());
  rows.push_back(check_quadratic_identity());
  rows.push_back(check_friedrich());
  return rows;
}

int run_check(const RunConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  const std::vector<CheckRow> rows = run_check_suite();
  std::ofstream out((dir / "check_report.csv").string());
  if (!out) throw ConfigError("cannot open check_report.csv for writing");
  out << "name,value,threshold,status\n";
  bool all_pass = true;
  for (const CheckRow& row : rows) {
    out << row.name << ',' << format_double(row.value) << ','
        << format_double(row.threshold) << ','
        << (row.pass ? "pass" : "fail") << '\n';
    if (!row.pass) all_pass = false;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

RunConfig parse_config(const std::string& command, std::istream& text) {
  RunConfig cfg;
  cfg.command = command;
  std::set<std::string> seen;
  std::string raw;
  int line = 0;
  while (std::getline(text, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) +
                        ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(line) +
                        ": expected 'key = value'");
    if (!seen.insert(key).second)
      throw ConfigError("line " + std::to_string(line) + ": duplicate key '" +
                        key + "'");
    if (!assign_key(cfg, key, value, line))
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" +
                        key + "'");
  }
  validate_config(cfg);
  return cfg;
}

RunConfig parse_config_file(const std::string& command,
                            const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(command, in);
}

int run(const RunConfig& cfg) {
  validate_config(cfg);
  if (cfg.command == "flow") return run_flow(cfg);
  if (cfg.command == "entropy") return run_entropy(cfg);
  if (cfg.command == "phase") return run_phase(cfg);
  if (cfg.command == "spectral") return run_spectral(cfg);
  return run_check(cfg);
}

int cli_main(int argc, const char* const* argv) {
  const auto usage = [](std::ostream& out) {
    out << "usage: fisherflow <flow|entropy|phase|spectral|check> "
           "[config-file]\n";
  };
  if (argc < 2 || argc > 3) {
    usage(std::cerr);
    return 2;
  }
  const std::string command = argv[1];
  if (known_commands().count(command) == 0) {
    std::cerr << "unknown command '" << command << "'\n";
    usage(std::cerr);
    return 2;
  }
  try {
    RunConfig cfg;
    if (argc == 3) {
      cfg = parse_config_file(command, argv[2]);
    } else {
      cfg.command = command;
    }
    return run(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace fisherflow
