#pragma once

#include <vector>

#include "fisherflow/field.hpp"
#include "fisherflow/flow.hpp"
#include "fisherflow/metric.hpp"

namespace fisherflow {

struct PhysicsParams {
  double mass = 1.0;
  double hbar = 1.0;
};

// Per-snapshot functionals of a density/metric pair.
struct EntropyReport {
  double t = 0.0;
  double nash = 0.0;        // integral(u log u dV)
  double perelman = 0.0;    // integral((|grad f|^2 + R) u dV), f = -log u
  double fisher = 0.0;      // integral(|grad u|^2 / u dV)
  double mean_q = 0.0;      // integral(u Q dV)
  double mass = 0.0;        // integral(u dV)
  double curvature_integral = 0.0;  // integral(R u dV)
};

double nash_entropy(const DensityField& u, const MetricState& metric);

double fisher_information(const DensityField& u, const MetricState& metric);

double curvature_average(const DensityField& u, const MetricState& metric);

// Perelman functional.  The gradient term is evaluated through the density
// gradient, |grad f|^2 e^(-f) = |grad u|^2 / u for f = -log u, which makes
// the split into fisher_information plus curvature_average hold to rounding
// with the same stencils.
double perelman_functional(const DensityField& u, const MetricState& metric);

// Quantum potential Q = -(hbar^2/8m) [ (grad P / P)^2 - 2 lap(P)/P ].
ScalarField quantum_potential(const DensityField& p, const MetricState& metric,
                              const PhysicsParams& params);

// integral(P Q dV).  On closed grids the Laplacian term integrates to zero
// exactly, so this equals -(hbar^2/8m) times the Fisher information.
double mean_quantum_potential(const DensityField& p, const MetricState& metric,
                              const PhysicsParams& params);

// One EntropyReport per snapshot of a density-carrying trajectory.
std::vector<EntropyReport> trajectory_reports(const FlowTrajectory& traj,
                                              const PhysicsParams& params);

struct MonotonicityRow {
  double t = 0.0;
  double dn_dt = 0.0;     // centered difference of the Nash entropy
  double perelman = 0.0;  // Perelman functional at the snapshot
  double residual = 0.0;  // |dn_dt - perelman|
  bool min_r_nonneg = false;        // min R >= 0 across the stencil window
  bool nash_nondecreasing = false;  // N nondecreasing across the window
};

// Checks d/dt N = F at every interior snapshot of a density-carrying
// trajectory, flagging the windows where nonnegative curvature makes the
// entropy provably monotone.
std::vector<MonotonicityRow> monotonicity_scan(const FlowTrajectory& traj);

}  // namespace fisherflow
