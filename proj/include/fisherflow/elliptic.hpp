#pragma once

#include <array>
#include <optional>
#include <vector>

#include "fisherflow/field.hpp"
#include "fisherflow/geometry.hpp"
#include "fisherflow/metric.hpp"

namespace fisherflow {

enum class Gauge { none, zero_mean };

// Source term F = R P - lap(P) of the phase equation
//   -(1/m) div(P grad S) + kappa S = F.
ScalarField phase_rhs(const DensityField& p, const MetricState& metric);

// Discrete weak system for the phase equation.  The operator is the
// conservative flux form of -(1/m) div(P grad S) + kappa S with arithmetic
// edge means of P, acting on all nodes of a closed grid or on the interior
// nodes of an interval (Dirichlet rows eliminated, boundary data folded
// into the right-hand side).  It is symmetric in the dV-weighted inner
// product, and its quadratic form reproduces
//   (1/m) integral(P |grad S|^2 dV) + kappa integral(S^2 dV)
// exactly on closed grids.
struct WeakSystem {
  MetricState metric;
  std::vector<double> density;  // P per node
  double mass_param = 1.0;
  double kappa = 0.0;
  Gauge gauge = Gauge::none;
  std::vector<double> rhs;  // per unknown; callers may overwrite
  std::array<double, 2> dirichlet_values{0.0, 0.0};

  // Precomputed by assemble_weak.
  std::vector<double> inv_sqrt_g;    // e^(-2 phi) per node
  std::vector<double> edge_coeff_x;  // P averaged onto x-edges
  std::vector<double> edge_coeff_y;  // y-edges (torus only)
  std::vector<double> weight;        // quad weight * sqrt(g) per unknown

  bool dirichlet() const;
  std::size_t unknown_count() const { return weight.size(); }

  void apply(const std::vector<double>& x, std::vector<double>& y) const;
  double inner(const std::vector<double>& x,
               const std::vector<double>& y) const;
  double quadratic_form(const std::vector<double>& x) const;
  void project_zero_mean(std::vector<double>& x) const;

  // Expand an unknown vector to a full grid field (adds Dirichlet values).
  ScalarField to_field(const std::vector<double>& x) const;
  std::vector<double> restrict_to_unknowns(const ScalarField& f) const;
};

// Builds the weak system; dirichlet_values supplies interval boundary data.
// kappa = 0 on a closed grid requires the zero-mean gauge, otherwise the
// constants are in the kernel and assembly refuses the system.
WeakSystem assemble_weak(const DensityField& p, const MetricState& metric,
                         double mass_param, double kappa, Gauge gauge,
                         std::array<double, 2> dirichlet_values = {0.0, 0.0});

struct SolveReport {
  ScalarField solution;
  int iterations = 0;
  double residual = 0.0;  // final relative residual
  double epsilon = 0.0;   // min P
  double coercivity = 0.0;
  double compatibility_defect = 0.0;  // integral(rhs dV)
};

// Unpreconditioned conjugate gradients in the dV inner product.  Relative
// residual tolerance; raises ConvergenceError (with the residual history)
// past max_iter, and CompatibilityError when a zero-mean solve is handed a
// right-hand side with |integral(rhs dV)| > tol * ||rhs||.
SolveReport solve(const WeakSystem& system, double tol = 1e-10,
                  int max_iter = 10000);

struct RitzResult {
  double value = 0.0;
  std::vector<double> vector;  // dV-normalized, over unknowns
  int iterations = 0;
};

// Smallest Ritz value of the system operator by inverse power iteration
// (restricted to the zero-mean complement when the system is gauged).
// Converged when successive Rayleigh quotients differ by < 1e-10.
RitzResult smallest_ritz(const WeakSystem& system, int max_outer = 500);

struct CoercivityReport {
  double epsilon = 0.0;   // min P
  double constant = 0.0;  // coercivity certificate
  std::optional<double> friedrich_c;  // 1/lambda_1, Dirichlet intervals
};

// Coercivity certificate for the weak form on P's grid (flat geometry):
// min(eps/m, kappa) when kappa > 0, and the Poincare-based constant
// eps / (m (1 + c)) with c = 1/lambda_1 when kappa = 0.
CoercivityReport coercivity_report(const DensityField& p, double mass_param,
                                   double kappa, Boundary boundary);

// Closed-form 1-D solution of (P S')' = P'' - R P on an interval grid:
//   S = log P - int(1/P int(R P)) + c int(1/P) + k,
// all antiderivatives taken as cumulative trapezoid sums from x = 0.
ScalarField oracle_1d_phase(const ScalarField& p, const ScalarField& r,
                            double c, double k);

// L2 norm over interior nodes of (P S')' - (lap P - R P) with the same flux
// stencil the weak system uses; O(h^2) for the oracle solution.
double phase_oracle_residual(const ScalarField& p, const ScalarField& r,
                             const ScalarField& s);

}  // namespace fisherflow
