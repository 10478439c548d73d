#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fisherflow/errors.hpp"
#include "fisherflow/spectral.hpp"

using namespace fisherflow;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * kPi;

double lattice_eig(int n, double length, double mode_angle) {
  const double h = length / n;
  return (2.0 - 2.0 * std::cos(mode_angle * h / length)) / (h * h);
}

}  // namespace

TEST_CASE("interval lambda1 approaches pi^2") {
  const ManifoldGrid g = ManifoldGrid::interval(256, 1.0);
  const EigenEstimate est =
      lambda1_mode(flat_metric(g), Boundary::dirichlet_zero);
  CHECK(std::abs(est.lambda1 - kPi * kPi) < 0.01 * kPi * kPi);
  // and nails the lattice eigenvalue it is actually estimating
  CHECK(std::abs(est.lambda1 - lattice_eig(256, 1.0, kPi)) <=
        1e-8 * est.lambda1);
  CHECK(est.iterations > 0);
  // the mode honors the Dirichlet ends
  CHECK(est.mode.values.front() == 0.0);
  CHECK(est.mode.values.back() == 0.0);
}

TEST_CASE("closed-grid lambda1 skips the constant mode") {
  const ManifoldGrid circle = ManifoldGrid::circle(64, 1.0);
  const double lc = lambda1_estimate(flat_metric(circle), Boundary::periodic);
  CHECK(std::abs(lc - lattice_eig(64, 1.0, kTau)) <= 1e-8 * lc);

  const ManifoldGrid torus = ManifoldGrid::torus(48, 48, 1.0, 1.0);
  const double lt = lambda1_estimate(flat_metric(torus), Boundary::periodic);
  CHECK(std::abs(lt - lattice_eig(48, 1.0, kTau)) <= 1e-8 * lt);
  CHECK(std::abs(lt - 4.0 * kPi * kPi) < 0.01 * 4.0 * kPi * kPi);
}

TEST_CASE("constant conformal factor rescales lambda1 exactly") {
  const ManifoldGrid g = ManifoldGrid::torus(32, 32, 1.0, 1.0);
  const double flat = lambda1_estimate(flat_metric(g), Boundary::periodic);
  const MetricState scaled(Conformal2D{ScalarField::constant(g, 0.15)});
  const double conf = lambda1_estimate(scaled, Boundary::periodic);
  CHECK(conf == doctest::Approx(std::exp(-0.3) * flat).epsilon(1e-9));
}

TEST_CASE("reported mode attains lambda1 as a Rayleigh quotient") {
  const ManifoldGrid g = ManifoldGrid::interval(64, 1.0);
  const MetricState flat = flat_metric(g);
  const EigenEstimate est = lambda1_mode(flat, Boundary::dirichlet_zero);
  const WeakSystem sys =
      assemble_weak(DensityField(ScalarField::constant(g, 1.0)), flat, 1.0,
                    0.0, Gauge::none);
  const std::vector<double> v = sys.restrict_to_unknowns(est.mode);
  CHECK(sys.inner(v, v) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sys.quadratic_form(v) ==
        doctest::Approx(est.lambda1).epsilon(1e-10));
}

TEST_CASE("lambda1 validation") {
  const ManifoldGrid circle = ManifoldGrid::circle(16, 1.0);
  CHECK_THROWS_AS(lambda1_mode(flat_metric(circle), Boundary::dirichlet_zero),
                  StateError);
  const ManifoldGrid interval = ManifoldGrid::interval(16, 1.0);
  CHECK_THROWS_AS(lambda1_mode(flat_metric(interval), Boundary::periodic),
                  StateError);
  CHECK_THROWS_AS(
      lambda1_mode(MetricState(HomogeneousEinstein{2, 1.0}),
                   Boundary::periodic),
      UnsupportedFamilyError);
}

TEST_CASE("torus bound report") {
  const SpectralReport rep = bound_report(FlatTorus{1.0}, 4.0 * kPi * kPi);
  CHECK(rep.method == SpectralMethod::inverse_power);
  CHECK(rep.diameter == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(rep.curvature_bound == 0.0);
  REQUIRE(rep.checks.size() == 1);
  CHECK(rep.checks[0].name == "zhong_yang");
  CHECK(rep.checks[0].bound_value ==
        doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
  CHECK(rep.checks[0].status == CheckStatus::holds);

  // a violated bound is reported, not silently passed
  const SpectralReport bad = bound_report(FlatTorus{1.0}, 1.0);
  CHECK(bad.checks[0].status == CheckStatus::fails);

  CHECK_THROWS_AS(bound_report(FlatTorus{-1.0}, 1.0), PositivityError);
  CHECK_THROWS_AS(bound_report(FlatTorus{1.0}, 0.0), PositivityError);
}

TEST_CASE("sphere bound report") {
  // 3-sphere: lambda1 = 3/c analytically, Lichnerowicz equality
  const SpectralReport s3 = bound_report(RoundSphere{3, 1.0}, 3.0);
  CHECK(s3.method == SpectralMethod::analytic);
  CHECK(s3.diameter == doctest::Approx(kPi));
  CHECK(s3.curvature_bound == doctest::Approx(1.0));
  REQUIRE(s3.checks.size() == 3);
  CHECK(s3.checks[0].name == "zhong_yang");
  CHECK(s3.checks[0].status == CheckStatus::holds);
  CHECK(s3.checks[1].name == "lichnerowicz_3k");
  CHECK(s3.checks[1].bound_value == doctest::Approx(3.0));
  CHECK(s3.checks[1].status == CheckStatus::holds);  // equality with slack
  CHECK(s3.checks[2].name == "ling_refined");
  CHECK(s3.checks[2].status == CheckStatus::not_evaluated);
  CHECK(std::isnan(s3.checks[2].bound_value));

  // 2-sphere: no Lichnerowicz row
  const SpectralReport s2 = bound_report(RoundSphere{2, 2.0}, 1.0);
  REQUIRE(s2.checks.size() == 1);
  CHECK(s2.checks[0].bound_value == doctest::Approx(0.5));
  CHECK(s2.checks[0].status == CheckStatus::holds);
  CHECK(s2.curvature_bound == doctest::Approx(0.25));

  CHECK_THROWS_AS(bound_report(RoundSphere{1, 1.0}, 1.0), ShapeError);
  CHECK_THROWS_AS(bound_report(RoundSphere{3, -1.0}, 1.0), PositivityError);
}

TEST_CASE("friedrich interval report") {
  const ManifoldGrid g = ManifoldGrid::interval(64, 1.0);
  const double lambda = lambda1_estimate(flat_metric(g),
                                         Boundary::dirichlet_zero);
  const SpectralReport rep = bound_report(DirichletInterval{g}, lambda);
  CHECK(rep.diameter == doctest::Approx(1.0));
  REQUIRE(rep.checks.size() == 2);
  CHECK(rep.checks[0].name == "friedrich_random");
  CHECK(rep.checks[0].status == CheckStatus::holds);
  CHECK(rep.checks[1].name == "friedrich_mode");
  CHECK(rep.checks[1].status == CheckStatus::holds);
  CHECK(rep.checks[1].bound_value == lambda);

  // an overstated lambda1 is caught by the eigenvector row: its Rayleigh
  // quotient sits exactly at the true minimum
  const SpectralReport inflated =
      bound_report(DirichletInterval{g}, 1.1 * lambda);
  CHECK(inflated.checks[1].status == CheckStatus::fails);

  const ManifoldGrid circle = ManifoldGrid::circle(16, 1.0);
  CHECK_THROWS_AS(bound_report(DirichletInterval{circle}, 1.0), ShapeError);
}

TEST_CASE("status and method names") {
  CHECK(to_string(CheckStatus::holds) == "true");
  CHECK(to_string(CheckStatus::fails) == "false");
  CHECK(to_string(CheckStatus::not_evaluated) == "not_evaluated");
  CHECK(to_string(SpectralMethod::inverse_power) == "inverse_power");
  CHECK(to_string(SpectralMethod::analytic) == "analytic");
}
