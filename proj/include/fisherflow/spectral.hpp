#pragma once

#include <string>
#include <vector>

#include "fisherflow/elliptic.hpp"
#include "fisherflow/field.hpp"
#include "fisherflow/grid.hpp"
#include "fisherflow/metric.hpp"

namespace fisherflow {

struct EigenEstimate {
  double lambda1 = 0.0;
  ScalarField mode;  // full-grid eigenvector, dV-normalized
  int iterations = 0;
};

// Smallest eigenvalue of -lap with the given boundary treatment: the
// smallest Dirichlet eigenvalue on intervals, the smallest nonzero
// eigenvalue on closed grids (constants removed by zero-mean deflation).
// Inverse power iteration on the weak system with unit density; converged
// when successive Rayleigh quotients differ by < 1e-10.
EigenEstimate lambda1_mode(const MetricState& metric, Boundary boundary);
double lambda1_estimate(const MetricState& metric, Boundary boundary);

enum class CheckStatus { holds, fails, not_evaluated };
std::string to_string(CheckStatus s);

struct BoundCheck {
  std::string name;
  double bound_value = 0.0;  // nan when the bound cannot be evaluated
  CheckStatus status = CheckStatus::not_evaluated;
};

enum class SpectralMethod { inverse_power, analytic };
std::string to_string(SpectralMethod m);

struct SpectralReport {
  double lambda1 = 0.0;
  SpectralMethod method = SpectralMethod::inverse_power;
  double diameter = 0.0;
  double curvature_bound = 0.0;  // K with Ric = 2 K g where applicable
  std::vector<BoundCheck> checks;
};

// Example descriptors for the bound checks.
struct FlatTorus {
  double side = 1.0;  // square torus, diameter side*sqrt(2)/2
};
struct RoundSphere {
  int dim = 3;
  double scale = 1.0;  // c; lambda1 = dim/c analytically
};
struct DirichletInterval {
  ManifoldGrid grid;  // grid the estimate was computed on
};

// Evaluates the first-eigenvalue bounds on an analytic example against the
// supplied lambda1 estimate.
//
// Flat square torus: Zhong-Yang lambda1 >= pi^2/d^2 with d = side*sqrt(2)/2.
// Round sphere: Zhong-Yang with d = pi*sqrt(c); for the 3-sphere also the
// Lichnerowicz-type bound lambda1 >= 3K with K = 1/c (equality analytically),
// and Ling's refined bound K + pi^2/d~^2 is listed but not evaluated because
// the nodal-domain diameter d~ is not computable here.
// Dirichlet interval: Friedrich's inequality ||psi||^2 <= (1/lambda1)
// ||grad psi||^2, verified for 10 seeded random interior fields and for the
// eigenvector itself (the discrete minimum, so equality up to rounding).
SpectralReport bound_report(const FlatTorus& example, double lambda1);
SpectralReport bound_report(const RoundSphere& example, double lambda1);
SpectralReport bound_report(const DirichletInterval& example, double lambda1);

}  // namespace fisherflow
