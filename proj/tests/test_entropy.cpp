#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fisherflow/entropy.hpp"
#include "fisherflow/errors.hpp"
#include "fisherflow/flow.hpp"

using namespace fisherflow;

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

DensityField cosine_density(const ManifoldGrid& g, const MetricState& m,
                            double a) {
  const ScalarField raw = ScalarField::sample(
      g, std::function<double(double)>(
             [a](double x) { return 1.0 + a * std::cos(kTau * x); }));
  return normalize_density(raw, m);
}

}  // namespace

TEST_CASE("uniform density functionals are exact") {
  const ManifoldGrid g = ManifoldGrid::torus(16, 16, 2.0, 2.0);
  const MetricState flat = flat_metric(g);
  const DensityField u = normalize_density(ScalarField::constant(g, 1.0), flat);
  CHECK(nash_entropy(u, flat) ==
        doctest::Approx(std::log(0.25)).epsilon(1e-14));
  CHECK(fisher_information(u, flat) == 0.0);
  CHECK(perelman_functional(u, flat) == doctest::Approx(0.0));
  CHECK(std::abs(mean_quantum_potential(u, flat, PhysicsParams{})) < 1e-15);
  CHECK(std::abs(curvature_average(u, flat)) < 1e-15);
}

TEST_CASE("fisher information converges to the closed form") {
  // u proportional to 1 + a cos(2 pi x) on the unit circle:
  // integral(u'^2/u dx) = 4 pi^2 (1 - sqrt(1 - a^2))
  const double a = 0.5;
  const double exact =
      4.0 * std::numbers::pi * std::numbers::pi * (1.0 - std::sqrt(0.75));
  double err[2];
  int idx = 0;
  for (int n : {64, 128}) {
    const ManifoldGrid g = ManifoldGrid::circle(n, 1.0);
    const MetricState m = flat_metric(g);
    err[idx++] = std::abs(fisher_information(cosine_density(g, m, a), m) -
                          exact);
  }
  CHECK(err[1] < 1e-2 * exact);
  CHECK(err[0] / err[1] > 3.3);
  CHECK(err[0] / err[1] < 4.7);
}

TEST_CASE("perelman splits into fisher plus curvature to rounding") {
  // conformal torus
  const ManifoldGrid torus = ManifoldGrid::torus(48, 48, 1.0, 1.0);
  const ScalarField phi = ScalarField::sample(
      torus, std::function<double(double, double)>([](double x, double y) {
        return 0.05 * std::sin(kTau * x) + 0.03 * std::cos(kTau * y);
      }));
  const MetricState conf(Conformal2D{phi});
  const ScalarField raw2 = ScalarField::sample(
      torus, std::function<double(double, double)>([](double x, double y) {
        return 1.0 + 0.3 * std::sin(kTau * x) * std::cos(kTau * y);
      }));
  // prescribed circle and interval
  const ManifoldGrid circle = ManifoldGrid::circle(96, 1.0);
  const MetricState pres(Prescribed1D{ScalarField::sample(
      circle, std::function<double(double)>(
                  [](double x) { return std::cos(kTau * x); }))});
  const ManifoldGrid interval = ManifoldGrid::interval(64, 1.0);
  const MetricState ipres(Prescribed1D{ScalarField::sample(
      interval, std::function<double(double)>(
                    [](double x) { return std::sin(std::numbers::pi * x); }))});

  const struct {
    const MetricState* m;
    DensityField u;
  } cases[] = {
      {&conf, normalize_density(raw2, conf)},
      {&pres, cosine_density(circle, pres, 0.4)},
      {&ipres, normalize_density(
                   ScalarField::sample(
                       interval,
                       std::function<double(double)>([](double x) {
                         return 1.0 + 0.3 * std::sin(kTau * x);
                       })),
                   ipres)},
  };
  for (const auto& c : cases) {
    const double f = perelman_functional(c.u, *c.m);
    const double split =
        fisher_information(c.u, *c.m) + curvature_average(c.u, *c.m);
    CHECK(std::abs(f - split) <= 1e-12 * (1.0 + std::abs(f)));
  }
}

TEST_CASE("mean quantum potential equals the fisher multiple on closed grids") {
  const PhysicsParams params{1.3, 0.7};
  const double coeff = params.hbar * params.hbar / (8.0 * params.mass);

  const ManifoldGrid circle = ManifoldGrid::circle(128, 1.0);
  const MetricState flat1 = flat_metric(circle);
  const DensityField u1 = cosine_density(circle, flat1, 0.4);
  CHECK(std::abs(mean_quantum_potential(u1, flat1, params) +
                 coeff * fisher_information(u1, flat1)) <=
        1e-10 * coeff * fisher_information(u1, flat1));

  const ManifoldGrid torus = ManifoldGrid::torus(32, 32, 1.0, 1.0);
  const ScalarField phi = ScalarField::sample(
      torus, std::function<double(double, double)>([](double x, double) {
        return 0.1 * std::sin(kTau * x);
      }));
  const MetricState conf(Conformal2D{phi});
  const ScalarField raw = ScalarField::sample(
      torus, std::function<double(double, double)>([](double x, double y) {
        return 1.0 + 0.25 * std::cos(kTau * x) + 0.2 * std::sin(kTau * y);
      }));
  const DensityField u2 = normalize_density(raw, conf);
  CHECK(std::abs(mean_quantum_potential(u2, conf, params) +
                 coeff * fisher_information(u2, conf)) <=
        1e-10 * coeff * fisher_information(u2, conf));
}

TEST_CASE("quantum potential pointwise closed form") {
  // Z-independent: Q = -(hbar^2/8m) [ (p'/p)^2 - 2 p''/p ] for u = p/Z
  const PhysicsParams params{1.3, 0.7};
  const double c = params.hbar * params.hbar / (8.0 * params.mass);
  double err[2];
  int idx = 0;
  for (int n : {64, 128}) {
    const ManifoldGrid g = ManifoldGrid::circle(n, 1.0);
    const MetricState m = flat_metric(g);
    const DensityField u = cosine_density(g, m, 0.4);
    const ScalarField q = quantum_potential(u, m, params);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = g.coord(0, i);
      const double p = 1.0 + 0.4 * std::cos(kTau * x);
      const double dp = -0.4 * kTau * std::sin(kTau * x);
      const double ddp = -0.4 * kTau * kTau * std::cos(kTau * x);
      const double analytic = -c * ((dp / p) * (dp / p) - 2.0 * ddp / p);
      worst = std::max(worst, std::abs(q.at(i) - analytic));
    }
    err[idx++] = worst;
  }
  CHECK(err[0] / err[1] > 3.3);
  CHECK(err[0] / err[1] < 4.7);

  const ManifoldGrid g = ManifoldGrid::circle(16, 1.0);
  const MetricState m = flat_metric(g);
  const DensityField u = normalize_density(ScalarField::constant(g, 1.0), m);
  CHECK_THROWS_AS(quantum_potential(u, m, PhysicsParams{-1.0, 1.0}),
                  PositivityError);
  CHECK_THROWS_AS(quantum_potential(u, m, PhysicsParams{1.0, 0.0}),
                  PositivityError);
}

TEST_CASE("sphere entropies reduce to volume formulas") {
  const MetricState sphere(HomogeneousEinstein{2, 0.7});
  const double v = metric_volume(sphere);
  const DensityField u(ScalarField(ManifoldGrid::sphere_token(), {1.0 / v}),
                       true);
  CHECK(nash_entropy(u, sphere) == doctest::Approx(-std::log(v)).epsilon(1e-14));
  CHECK(fisher_information(u, sphere) == 0.0);
  CHECK(perelman_functional(u, sphere) ==
        doctest::Approx(2.0 / 0.7).epsilon(1e-13));
  CHECK(mean_quantum_potential(u, sphere, PhysicsParams{}) == 0.0);

  const ManifoldGrid circle = ManifoldGrid::circle(8, 1.0);
  const DensityField wrong(ScalarField::constant(circle, 1.0));
  CHECK_THROWS_AS(nash_entropy(wrong, sphere), ShapeError);
}

TEST_CASE("trajectory reports carry per-snapshot functionals") {
  FlowConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.1;
  const FlowTrajectory bare =
      flow_run(MetricState(HomogeneousEinstein{2, 1.0}), cfg);
  CHECK_THROWS_AS(trajectory_reports(bare, PhysicsParams{}), StateError);

  const DensityField u_term(
      ScalarField(ManifoldGrid::sphere_token(), {1.0 / bare.volumes.back()}),
      true);
  const FlowTrajectory traj = conjugate_heat_backward(bare, u_term);
  const std::vector<EntropyReport> reports =
      trajectory_reports(traj, PhysicsParams{});
  REQUIRE(reports.size() == traj.size());
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const double c = traj.metrics[k].sphere().scale;
    CHECK(reports[k].t == traj.times[k]);
    CHECK(std::abs(reports[k].mass - 1.0) < 1e-13);
    CHECK(reports[k].nash ==
          doctest::Approx(-std::log(traj.volumes[k])).epsilon(1e-12));
    CHECK(reports[k].perelman == doctest::Approx(2.0 / c).epsilon(1e-12));
    CHECK(reports[k].fisher == 0.0);
    CHECK(reports[k].curvature_integral ==
          doctest::Approx(2.0 / c).epsilon(1e-12));
  }
}

TEST_CASE("entropy production matches the functional on the sphere") {
  FlowConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.2;
  const FlowTrajectory bare =
      flow_run(MetricState(HomogeneousEinstein{2, 1.0}), cfg);
  const DensityField u_term(
      ScalarField(ManifoldGrid::sphere_token(), {1.0 / bare.volumes.back()}),
      true);
  const FlowTrajectory traj = conjugate_heat_backward(bare, u_term);
  const std::vector<MonotonicityRow> rows = monotonicity_scan(traj);
  REQUIRE(rows.size() == traj.size() - 2);
  for (const MonotonicityRow& row : rows) {
    CHECK(row.residual < 1e-4);  // centered-difference bias at dt = 1e-3
    CHECK(row.min_r_nonneg);
    CHECK(row.nash_nondecreasing);
  }
}

TEST_CASE("entropy production on the perturbed torus") {
  const ManifoldGrid g = ManifoldGrid::torus(32, 32, 2.0, 2.0);
  const ScalarField phi0 = ScalarField::sample(
      g, std::function<double(double, double)>([](double x, double) {
        return 0.1 * std::sin(std::numbers::pi * x);
      }));
  FlowConfig cfg;
  cfg.dt = 2e-4;
  cfg.t_end = 4e-3;
  const FlowTrajectory bare = flow_run(MetricState(Conformal2D{phi0}), cfg);
  const ScalarField raw = ScalarField::sample(
      g, std::function<double(double, double)>([](double x, double) {
        return 1.0 + 0.2 * std::cos(std::numbers::pi * x);
      }));
  const FlowTrajectory traj =
      conjugate_heat_backward(bare, normalize_density(raw, bare.metrics.back()));
  const std::vector<MonotonicityRow> rows = monotonicity_scan(traj);
  REQUIRE(!rows.empty());
  for (const MonotonicityRow& row : rows) {
    CHECK(row.residual < 0.1 * std::abs(row.perelman));
    CHECK(row.nash_nondecreasing);
    CHECK(!row.min_r_nonneg);  // the seeded curvature changes sign
  }
}
