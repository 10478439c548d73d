#include "fisherflow/entropy.hpp"

#include <cmath>

#include "fisherflow/geometry.hpp"

namespace fisherflow {

namespace {

bool is_sphere(const MetricState& m) {
  return m.family() == MetricFamily::homogeneous_einstein;
}

void require_sphere_density(const DensityField& u, const char* op) {
  if (u.grid().topology() != Topology::sphere_family)
    throw ShapeError(std::string(op) + ": sphere metric needs a sphere density");
}

void require_params(const PhysicsParams& p) {
  if (!(p.mass > 0.0) || !(p.hbar > 0.0))
    throw PositivityError("physics parameters must be strictly positive");
}

double sphere_curvature(const MetricState& m) {
  const HomogeneousEinstein& s = m.sphere();
  return s.dim * (s.dim - 1.0) / s.scale;
}

}  // namespace

double nash_entropy(const DensityField& u, const MetricState& metric) {
  if (is_sphere(metric)) {
    require_sphere_density(u, "nash_entropy");
    double v = u.field.values[0];
    return metric_volume(metric) * v * std::log(v);
  }
  const ScalarField& f = u.field;
  std::vector<double> integrand(f.values.size());
  for (std::size_t k = 0; k < integrand.size(); ++k)
    integrand[k] = f.values[k] * std::log(f.values[k]);
  return integrate(ScalarField(f.grid, std::move(integrand)), metric);
}

double fisher_information(const DensityField& u, const MetricState& metric) {
  if (is_sphere(metric)) {
    require_sphere_density(u, "fisher_information");
    return 0.0;  // uniform density
  }
  ScalarField gsq = gradient_sq(u.field, metric);
  std::vector<double> integrand(gsq.values.size());
  for (std::size_t k = 0; k < integrand.size(); ++k)
    integrand[k] = gsq.values[k] / u.field.values[k];
  return integrate(ScalarField(u.field.grid, std::move(integrand)), metric);
}

double curvature_average(const DensityField& u, const MetricState& metric) {
  if (is_sphere(metric)) {
    require_sphere_density(u, "curvature_average");
    return sphere_curvature(metric) * density_mass(u, metric);
  }
  return weighted_inner(scalar_curvature(metric), u.field, metric);
}

double perelman_functional(const DensityField& u, const MetricState& metric) {
  if (is_sphere(metric)) {
    require_sphere_density(u, "perelman_functional");
    return curvature_average(u, metric);  // gradient term vanishes
  }
  ScalarField gsq = gradient_sq(u.field, metric);
  ScalarField curv = scalar_curvature(metric);
  std::vector<double> integrand(gsq.values.size());
  for (std::size_t k = 0; k < integrand.size(); ++k)
    integrand[k] = gsq.values[k] / u.field.values[k] +
                   curv.values[k] * u.field.values[k];
  return integrate(ScalarField(u.field.grid, std::move(integrand)), metric);
}

ScalarField quantum_potential(const DensityField& p, const MetricState& metric,
                              const PhysicsParams& params) {
  require_params(params);
  double coeff = -params.hbar * params.hbar / (8.0 * params.mass);
  if (is_sphere(metric)) {
    require_sphere_density(p, "quantum_potential");
    return ScalarField(ManifoldGrid::sphere_token(), {0.0});
  }
  ScalarField gsq = gradient_sq(p.field, metric);
  ScalarField lap = laplace_beltrami(p.field, metric);
  std::vector<double> q(gsq.values.size());
  for (std::size_t k = 0; k < q.size(); ++k) {
    double pk = p.field.values[k];
    q[k] = coeff * (gsq.values[k] / (pk * pk) - 2.0 * lap.values[k] / pk);
  }
  return ScalarField(p.field.grid, std::move(q));
}

double mean_quantum_potential(const DensityField& p, const MetricState& metric,
                              const PhysicsParams& params) {
  if (is_sphere(metric)) {
    require_params(params);
    require_sphere_density(p, "mean_quantum_potential");
    return 0.0;
  }
  return weighted_inner(p.field, quantum_potential(p, metric, params), metric);
}

std::vector<EntropyReport> trajectory_reports(const FlowTrajectory& traj,
                                              const PhysicsParams& params) {
  if (!traj.has_densities())
    throw StateError("trajectory_reports: trajectory carries no densities");
  require_params(params);
  std::vector<EntropyReport> reports;
  reports.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const DensityField& u = traj.densities[k];
    const MetricState& m = traj.metrics[k];
    EntropyReport r;
    r.t = traj.times[k];
    r.nash = nash_entropy(u, m);
    r.perelman = perelman_functional(u, m);
    r.fisher = fisher_information(u, m);
    r.mean_q = mean_quantum_potential(u, m, params);
    r.mass = density_mass(u, m);
    r.curvature_integral = curvature_average(u, m);
    reports.push_back(r);
  }
  return reports;
}

std::vector<MonotonicityRow> monotonicity_scan(const FlowTrajectory& traj) {
  if (!traj.has_densities())
    throw StateError("monotonicity_scan: trajectory carries no densities");
  if (traj.size() < 3)
    throw StateError("monotonicity_scan: need at least three snapshots");

  std::size_t n = traj.size();
  std::vector<double> nash(n), min_r(n);
  for (std::size_t k = 0; k < n; ++k) {
    nash[k] = nash_entropy(traj.densities[k], traj.metrics[k]);
    min_r[k] = scalar_curvature(traj.metrics[k]).min();
  }

  std::vector<MonotonicityRow> rows;
  rows.reserve(n - 2);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    MonotonicityRow row;
    row.t = traj.times[k];
    row.dn_dt =
        (nash[k + 1] - nash[k - 1]) / (traj.times[k + 1] - traj.times[k - 1]);
    row.perelman = perelman_functional(traj.densities[k], traj.metrics[k]);
    row.residual = std::abs(row.dn_dt - row.perelman);
    row.min_r_nonneg = std::min({min_r[k - 1], min_r[k], min_r[k + 1]}) >= 0.0;
    double tol = 1e-12 * (1.0 + std::abs(nash[k]));
    row.nash_nondecreasing =
        nash[k] >= nash[k - 1] - tol && nash[k + 1] >= nash[k] - tol;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fisherflow
