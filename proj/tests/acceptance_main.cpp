// Acceptance gate: runs every release criterion end to end and prints one
// PASS/FAIL line per criterion.  Exit status 0 only when all criteria hold.
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fisherflow/cli.hpp"
#include "fisherflow/elliptic.hpp"
#include "fisherflow/entropy.hpp"
#include "fisherflow/errors.hpp"
#include "fisherflow/flow.hpp"
#include "fisherflow/geometry.hpp"
#include "fisherflow/spectral.hpp"

using namespace fisherflow;

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;
constexpr double kPi = std::numbers::pi;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Gate {
  int failures = 0;
  void line(int id, const char* label, bool pass, const std::string& detail) {
    std::printf("%s  %2d  %-28s %s\n", pass ? "PASS" : "FAIL", id, label,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  void run(int id, const char* label,
           const std::function<std::pair<bool, std::string>()>& body) {
    try {
      const auto [pass, detail] = body();
      line(id, label, pass, detail);
    } catch (const std::exception& e) {
      line(id, label, false, std::string("unexpected exception: ") + e.what());
    }
  }
};

// ---- shared trajectories (criteria 2 and 3) --------------------------------

FlowTrajectory sphere_heat_trajectory() {
  FlowConfig fc;
  fc.dt = 1e-4;
  fc.t_end = 0.25;
  FlowTrajectory traj = flow_run(MetricState(HomogeneousEinstein{2, 1.0}), fc);
  const DensityField u_t = normalize_density(
      ScalarField::constant(ManifoldGrid::sphere_token(), 1.0),
      traj.metrics.back());
  return conjugate_heat_backward(traj, u_t);
}

FlowTrajectory torus_heat_trajectory(int n, double dt) {
  const double length = 2.0;
  const ManifoldGrid g = ManifoldGrid::torus(n, n, length, length);
  const MetricState initial(Conformal2D{ScalarField::sample(
      g, std::function<double(double, double)>([&](double x, double) {
        return 0.1 * std::sin(kTau * x / length);
      }))});
  FlowConfig fc;
  fc.dt = dt;
  fc.t_end = 0.01;
  FlowTrajectory traj = flow_run(initial, fc);
  const ScalarField raw = ScalarField::sample(
      g, std::function<double(double, double)>([&](double x, double) {
        return 1.0 + 0.2 * std::cos(kTau * x / length);
      }));
  return conjugate_heat_backward(traj,
                                 normalize_density(raw, traj.metrics.back()));
}

double max_relative_residual(const FlowTrajectory& traj) {
  double worst = 0.0;
  for (const MonotonicityRow& row : monotonicity_scan(traj))
    worst = std::max(worst, row.residual / std::abs(row.perelman));
  return worst;
}

double max_mass_drift(const FlowTrajectory& traj) {
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k)
    worst = std::max(
        worst,
        std::abs(density_mass(traj.densities[k], traj.metrics[k]) - 1.0));
  return worst;
}

// ---- criterion 4 battery ----------------------------------------------------

struct DensityCase {
  const char* name;
  MetricState metric;
  DensityField u;
  bool closed;  // mean-Q identity needs a closed grid (or the sphere family)
};

std::vector<DensityCase> density_battery() {
  std::vector<DensityCase> cases;
  {
    const ManifoldGrid g = ManifoldGrid::torus(48, 48, 1.0, 1.0);
    MetricState metric(Conformal2D{ScalarField::sample(
        g, std::function<double(double, double)>([](double x, double y) {
          return 0.05 * std::sin(kTau * x) + 0.03 * std::cos(kTau * y);
        }))});
    const ScalarField raw = ScalarField::sample(
        g, std::function<double(double, double)>([](double x, double y) {
          return 1.0 + 0.3 * std::sin(kTau * x) * std::cos(kTau * y);
        }));
    DensityField u = normalize_density(raw, metric);
    cases.push_back({"conformal torus", std::move(metric), std::move(u), true});
  }
  {
    const ManifoldGrid g = ManifoldGrid::torus(32, 32, 1.0, 1.0);
    MetricState metric = flat_metric(g);
    const ScalarField raw = ScalarField::sample(
        g, std::function<double(double, double)>([](double, double y) {
          return 1.0 + 0.25 * std::cos(kTau * y);
        }));
    DensityField u = normalize_density(raw, metric);
    cases.push_back({"flat torus", std::move(metric), std::move(u), true});
  }
  {
    const ManifoldGrid g = ManifoldGrid::circle(96, 1.0);
    MetricState metric(Prescribed1D{ScalarField::sample(
        g, std::function<double(double)>(
               [](double x) { return std::cos(kTau * x); }))});
    const ScalarField raw = ScalarField::sample(
        g, std::function<double(double)>(
               [](double x) { return 1.0 + 0.4 * std::cos(kTau * x); }));
    DensityField u = normalize_density(raw, metric);
    cases.push_back({"circle", std::move(metric), std::move(u), true});
  }
  {
    const ManifoldGrid g = ManifoldGrid::interval(64, 1.0);
    MetricState metric(Prescribed1D{ScalarField::sample(
        g, std::function<double(double)>(
               [](double x) { return std::sin(kPi * x); }))});
    const ScalarField raw = ScalarField::sample(
        g, std::function<double(double)>(
               [](double x) { return 1.0 + 0.3 * std::sin(kTau * x); }));
    DensityField u = normalize_density(raw, metric);
    cases.push_back({"interval", std::move(metric), std::move(u), false});
  }
  {
    MetricState metric(HomogeneousEinstein{3, 0.7});
    DensityField u = normalize_density(
        ScalarField::constant(ManifoldGrid::sphere_token(), 1.0), metric);
    cases.push_back({"round sphere", std::move(metric), std::move(u), true});
  }
  return cases;
}

// ---- criterion 5 helpers ----------------------------------------------------

ScalarField phase_density(const ManifoldGrid& g) {
  return ScalarField::sample(
      g, std::function<double(double)>(
             [](double x) { return 1.0 + 0.5 * std::sin(kTau * x); }));
}

ScalarField phase_curvature(const ManifoldGrid& g) {
  return ScalarField::sample(g, std::function<double(double)>([](double x) {
                               return std::cos(kTau * x);
                             }));
}

double phase_solve_error(int n) {
  const ManifoldGrid g = ManifoldGrid::interval(n, 1.0);
  const ScalarField p = phase_density(g);
  const ScalarField r = phase_curvature(g);
  const ScalarField oracle = oracle_1d_phase(p, r, 0.0, 0.0);
  const WeakSystem sys =
      assemble_weak(DensityField(p), MetricState(Prescribed1D{r}), 1.0, 0.0,
                    Gauge::none, {oracle.values.front(), oracle.values.back()});
  const SolveReport rep = solve(sys, 1e-12, 50000);
  double acc = 0.0;
  for (std::size_t i = 0; i < rep.solution.values.size(); ++i) {
    const double d = rep.solution.values[i] - oracle.values[i];
    acc += d * d * g.quad_weight(i);
  }
  return std::sqrt(acc);
}

double phase_self_residual(int n) {
  const ManifoldGrid g = ManifoldGrid::interval(n, 1.0);
  const ScalarField p = phase_density(g);
  const ScalarField r = phase_curvature(g);
  return phase_oracle_residual(p, r, oracle_1d_phase(p, r, 0.0, 0.0));
}

// ---- criterion 10 helper ----------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  Gate gate;

  gate.run(1, "sphere flow closed form", [] {
    double scale_err = 0.0;
    double vol_res = 0.0;
    for (int dim : {2, 3}) {
      FlowConfig fc;
      fc.dt = 1e-3;
      fc.t_end = 0.8 / (2.0 * (dim - 1));
      const FlowTrajectory traj =
          flow_run(MetricState(HomogeneousEinstein{dim, 1.0}), fc);
      for (std::size_t k = 0; k < traj.size(); ++k) {
        const double exact = 1.0 - 2.0 * (dim - 1) * traj.times[k];
        scale_err = std::max(
            scale_err, std::abs(traj.metrics[k].sphere().scale - exact));
        vol_res = std::max(vol_res, traj.volume_residuals[k]);
      }
    }
    const bool pass = scale_err <= 1e-8 && vol_res <= 1e-8;
    return std::make_pair(pass, "max scale err " + sci(scale_err) +
                                    ", max volume residual " + sci(vol_res));
  });

  // Criteria 2 and 3 share the sphere and torus conjugate-heat trajectories.
  FlowTrajectory sphere_traj;
  FlowTrajectory torus_base;
  FlowTrajectory torus_fine;
  bool trajectories_ready = false;
  try {
    sphere_traj = sphere_heat_trajectory();
    torus_base = torus_heat_trajectory(64, 1e-4);
    // The refinement halves dt; n = 126 is the finest grid whose parabolic
    // step bound still admits dt = 5e-5 on this domain.
    torus_fine = torus_heat_trajectory(126, 5e-5);
    trajectories_ready = true;
  } catch (const std::exception& e) {
    gate.line(2, "entropy monotonicity", false,
              std::string("trajectory build failed: ") + e.what());
    gate.line(3, "mass conservation", false, "trajectory build failed");
  }

  if (trajectories_ready) {
    gate.run(2, "entropy monotonicity", [&] {
      double sphere_res = 0.0;
      for (const MonotonicityRow& row : monotonicity_scan(sphere_traj))
        sphere_res = std::max(sphere_res, row.residual);
      const double base = max_relative_residual(torus_base);
      const double fine = max_relative_residual(torus_fine);
      const double gain = base / fine;
      const bool pass = sphere_res <= 1e-6 && base <= 1e-2 && gain >= 1.5;
      return std::make_pair(pass, "sphere residual " + sci(sphere_res) +
                                      ", torus relative " + sci(base) +
                                      ", refinement gain " + sci(gain));
    });

    gate.run(3, "mass conservation", [&] {
      const double drift =
          std::max({max_mass_drift(sphere_traj), max_mass_drift(torus_base),
                    max_mass_drift(torus_fine)});
      return std::make_pair(drift <= 1e-6, "max |mass - 1| " + sci(drift));
    });
  }

  gate.run(4, "fisher identities", [] {
    double worst_split = 0.0;
    double worst_meanq = 0.0;
    const PhysicsParams params{1.3, 0.7};
    for (const DensityCase& c : density_battery()) {
      const double perelman = perelman_functional(c.u, c.metric);
      const double fisher = fisher_information(c.u, c.metric);
      const double curv = curvature_average(c.u, c.metric);
      worst_split = std::max(
          worst_split,
          std::abs(perelman - (fisher + curv)) / (1.0 + std::abs(perelman)));
      if (!c.closed) continue;
      const double mean_q = mean_quantum_potential(c.u, c.metric, params);
      const double expected =
          -params.hbar * params.hbar / (8.0 * params.mass) * fisher;
      worst_meanq =
          std::max(worst_meanq,
                   std::abs(mean_q - expected) / (1.0 + std::abs(mean_q)));
    }
    const bool pass = worst_split <= 1e-10 && worst_meanq <= 1e-8;
    return std::make_pair(pass, "split rel " + sci(worst_split) +
                                    ", mean-Q rel " + sci(worst_meanq));
  });

  gate.run(5, "phase solver vs oracle", [] {
    const double e64 = phase_solve_error(64);
    const double e128 = phase_solve_error(128);
    const double e256 = phase_solve_error(256);
    const double o1 = std::log2(e64 / e128);
    const double o2 = std::log2(e128 / e256);
    const double self =
        std::log2(phase_self_residual(64) / phase_self_residual(128));
    const bool pass = o1 >= 1.9 && o2 >= 1.9 && self >= 1.9;
    return std::make_pair(pass, "solve orders " + sci(o1) + ", " + sci(o2) +
                                    ", oracle order " + sci(self));
  });

  gate.run(6, "coercivity certificates", [] {
    const ManifoldGrid g = ManifoldGrid::circle(256, 1.0);
    const DensityField p(phase_density(g));
    const MetricState metric(Prescribed1D{phase_curvature(g)});
    const WeakSystem sys = assemble_weak(p, metric, 1.0, 0.25, Gauge::none);
    const RitzResult ritz = smallest_ritz(sys);
    const SolveReport rep = solve(sys, 1e-10, 10000);
    const bool pass = ritz.value >= 0.25 - 1e-6 && rep.iterations <= 500 &&
                      rep.residual <= 1e-10;
    return std::make_pair(pass, "smallest Ritz " + sci(ritz.value) + ", " +
                                    std::to_string(rep.iterations) +
                                    " iterations");
  });

  gate.run(7, "determinant identity", [] {
    std::mt19937 rng(1005u);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const auto random_spd = [&] {
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
    };
    int failures = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const Mat3 a = random_spd();
      const Mat3 b = random_spd();
      const DetDerivative d = det_derivative_check(a, b);
      const double err = std::abs(d.analytic - d.numeric);
      const double bound = 1e-6 * (1.0 + std::abs(d.analytic));
      if (err > bound) ++failures;
      worst = std::max(worst, err / bound);
    }
    return std::make_pair(failures == 0,
                          std::to_string(failures) +
                              " failures in 100 trials, worst err/bound " +
                              sci(worst));
  });

  gate.run(8, "spectral bounds", [] {
    const EigenEstimate iv = lambda1_mode(
        flat_metric(ManifoldGrid::interval(256, 1.0)), Boundary::dirichlet_zero);
    const double iv_rel = std::abs(iv.lambda1 - kPi * kPi) / (kPi * kPi);
    const EigenEstimate tor = lambda1_mode(
        flat_metric(ManifoldGrid::torus(128, 128, 1.0, 1.0)),
        Boundary::periodic);
    const double tor_rel =
        std::abs(tor.lambda1 - 4.0 * kPi * kPi) / (4.0 * kPi * kPi);

    const auto holds_at = [](const SpectralReport& rep, std::size_t k) {
      return k < rep.checks.size() &&
             rep.checks[k].status == CheckStatus::holds;
    };
    const SpectralReport tor_rep = bound_report(FlatTorus{1.0}, tor.lambda1);
    const SpectralReport s3_rep = bound_report(RoundSphere{3, 1.0}, 3.0);
    const SpectralReport s2_rep = bound_report(RoundSphere{2, 0.5}, 4.0);
    const bool zy_torus = holds_at(tor_rep, 0);
    const bool sphere3 = holds_at(s3_rep, 0) && holds_at(s3_rep, 1);
    const bool sphere2 = holds_at(s2_rep, 0);
    const ManifoldGrid fr_grid = ManifoldGrid::interval(64, 1.0);
    const EigenEstimate fr =
        lambda1_mode(flat_metric(fr_grid), Boundary::dirichlet_zero);
    const SpectralReport fr_rep =
        bound_report(DirichletInterval{fr_grid}, fr.lambda1);
    bool friedrich = true;
    for (const BoundCheck& check : fr_rep.checks)
      if (check.status != CheckStatus::holds) friedrich = false;

    const bool pass = iv_rel <= 0.01 && tor_rel <= 0.01 && zy_torus &&
                      sphere3 && sphere2 && friedrich;
    return std::make_pair(pass, "interval rel " + sci(iv_rel) +
                                    ", torus rel " + sci(tor_rel) +
                                    ", bound checks " +
                                    (zy_torus && sphere3 && sphere2 && friedrich
                                         ? "hold"
                                         : "FAIL"));
  });

  gate.run(9, "quadratic identity", [] {
    const ManifoldGrid g = ManifoldGrid::torus(64, 64, 1.0, 1.0);
    const MetricState metric = flat_metric(g);
    std::mt19937 rng(31u);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> v(g.node_count());
      for (double& x : v) x = dist(rng);
      const ScalarField f(g, std::move(v));
      const ScalarField lap = laplace_beltrami(f, metric);
      ScalarField prod = f;
      for (std::size_t k = 0; k < prod.values.size(); ++k)
        prod.values[k] = -lap.values[k] * f.values[k];
      const double lhs = integrate(prod, metric);
      const double rhs = integrate(gradient_sq(f, metric), metric);
      worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
    return std::make_pair(worst <= 1e-8, "worst rel " + sci(worst));
  });

  gate.run(10, "check-suite determinism", [] {
    namespace fs = std::filesystem;
    const fs::path base =
        fs::temp_directory_path() /
        ("fisherflow_acceptance_" + std::to_string(::getpid()));
    const fs::path dir_a = base / "a";
    const fs::path dir_b = base / "b";
    fs::remove_all(base);
    RunConfig cfg;
    cfg.command = "check";
    cfg.out_dir = dir_a.string();
    const int rc_a = run(cfg);
    cfg.out_dir = dir_b.string();
    const int rc_b = run(cfg);
    const std::string bytes_a = slurp(dir_a / "check_report.csv");
    const std::string bytes_b = slurp(dir_b / "check_report.csv");
    fs::remove_all(base);
    const bool identical = !bytes_a.empty() && bytes_a == bytes_b;
    const bool pass = rc_a == 0 && rc_b == 0 && identical;
    return std::make_pair(pass, std::string("exit codes ") +
                                    std::to_string(rc_a) + "/" +
                                    std::to_string(rc_b) + ", reports " +
                                    (identical ? "identical" : "DIFFER"));
  });

  if (gate.failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria failed\n", gate.failures);
  return 1;
}
