#pragma once

#include <vector>

#include "fisherflow/field.hpp"
#include "fisherflow/geometry.hpp"
#include "fisherflow/metric.hpp"

namespace fisherflow {

struct FlowConfig {
  double t_end = 0.0;
  double dt = 0.0;
  int snapshot_every = 1;
  double safety_factor = 1.0;  // multiplies the parabolic step bound
};

// Snapshots of a Ricci flow run.  Densities are attached afterwards by the
// conjugate heat solver; until then the density vector is empty.
struct FlowTrajectory {
  std::vector<double> times;
  std::vector<MetricState> metrics;
  std::vector<double> volumes;
  // |d/dt vol + integral(R dV)| per snapshot: centered time differences on
  // grid families (one-sided at the ends), closed-form rate on the sphere
  // family.
  std::vector<double> volume_residuals;
  std::vector<DensityField> densities;
  int snapshot_every = 1;

  std::size_t size() const { return times.size(); }
  bool has_densities() const { return !densities.empty(); }
};

// Total volume of the manifold: grid quadrature of dV, or c^(n/2) times the
// unit-sphere volume for the homogeneous family.
double metric_volume(const MetricState& metric);

double unit_sphere_volume(int dim);

// integral(u dV); handles both grid-backed metrics and the sphere family.
double density_mass(const DensityField& u, const MetricState& metric);

// Scales a positive field so its mass is exactly 1, setting the flag.
DensityField normalize_density(const ScalarField& f, const MetricState& metric);

// Largest stable explicit step for the metric's parabolic updates.
double parabolic_step_bound(const MetricState& metric);

// One explicit Ricci flow step.  Conformal torus: phi += dt e^(-2 phi)
// lap_flat(phi), rejected beyond the parabolic bound.  Homogeneous sphere:
// classical RK4 on dc/dt = -2(n-1), which the constant slope makes exact.
// Prescribed1D is a fixed point (no intrinsic curvature flow in 1-D).
MetricState ricci_step(const MetricState& metric, double dt);

FlowTrajectory flow_run(const MetricState& initial, const FlowConfig& cfg);

// Integrates the conjugate heat equation d_s u = lap(u) - R u backwards
// through the trajectory (s = t_end - t), starting from u_terminal, which
// must be positive and normalized against the final metric.  Requires a
// dense trajectory (snapshot_every = 1).  On the conformal torus the update
// advances the chart mass u sqrt(g), whose flat-divergence form telescopes,
// so the total mass is conserved to rounding; drift beyond 1e-6 anywhere
// raises ConservationError.
FlowTrajectory conjugate_heat_backward(const FlowTrajectory& traj,
                                       const DensityField& u_terminal);

// L2(dV) norm of d_t f + lap(f) - |grad f|^2 + R with f = -log u, one value
// per interior snapshot (centered time differences), aligned with
// times[1..size-2].
std::vector<double> f_evolution_residual(const FlowTrajectory& traj);

struct SphereExact {
  double c;
  double curvature;  // n(n-1)/c
  double volume;     // c^(n/2) vol(unit n-sphere)
};

// Closed-form shrinking round sphere c(t) = c0 - 2(n-1) t.
SphereExact sphere_exact(int dim, double c0, double t);

}  // namespace fisherflow
