#include "fisherflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace fisherflow {

namespace {

constexpr double kBoundSlack = 1.0 + 1e-12;  // rounding slack on step checks

double conformal_step_bound(const Conformal2D& m) {
  const ManifoldGrid& g = m.log_conformal.grid;
  double inv = 1.0 / (g.spacing(0) * g.spacing(0)) +
               1.0 / (g.spacing(1) * g.spacing(1));
  double min_e2phi = std::exp(2.0 * m.log_conformal.min());
  return min_e2phi / (2.0 * inv);
}

void check_positive_everywhere(const std::vector<double>& u, double t) {
  for (double v : u)
    if (!(v > 0.0))
      throw PositivityError("conjugate heat density lost positivity at t = " +
                            std::to_string(t));
}

}  // namespace

double unit_sphere_volume(int dim) {
  double half = 0.5 * (dim + 1);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double metric_volume(const MetricState& metric) {
  if (metric.family() == MetricFamily::homogeneous_einstein) {
    const HomogeneousEinstein& s = metric.sphere();
    return std::pow(s.scale, 0.5 * s.dim) * unit_sphere_volume(s.dim);
  }
  return integrate(ScalarField::constant(metric.grid(), 1.0), metric);
}

double density_mass(const DensityField& u, const MetricState& metric) {
  if (metric.family() == MetricFamily::homogeneous_einstein) {
    if (u.grid().topology() != Topology::sphere_family)
      throw ShapeError("density_mass: sphere metric needs a sphere density");
    return u.field.values[0] * metric_volume(metric);
  }
  return integrate(u.field, metric);
}

DensityField normalize_density(const ScalarField& f,
                               const MetricState& metric) {
  DensityField raw(f, false);
  double z = density_mass(raw, metric);
  std::vector<double> scaled(f.values);
  for (double& v : scaled) v /= z;
  return DensityField(ScalarField(f.grid, std::move(scaled)), true);
}

double parabolic_step_bound(const MetricState& metric) {
  switch (metric.family()) {
    case MetricFamily::conformal2d:
      return conformal_step_bound(metric.conformal());
    case MetricFamily::prescribed1d: {
      double h = metric.grid().spacing(0);
      return 0.5 * h * h;
    }
    default:
      return std::numeric_limits<double>::infinity();
  }
}

MetricState ricci_step(const MetricState& metric, double dt) {
  if (!(dt > 0.0)) throw Error("ricci_step: dt must be positive");
  switch (metric.family()) {
    case MetricFamily::prescribed1d:
      return metric;  // fixed point
    case MetricFamily::conformal2d: {
      double bound = conformal_step_bound(metric.conformal());
      if (dt > bound * kBoundSlack)
        throw CflError("ricci_step: dt = " + std::to_string(dt) +
                       " exceeds parabolic bound " + std::to_string(bound));
      const ScalarField& phi = metric.conformal().log_conformal;
      ScalarField rate = laplace_beltrami(phi, metric);  // e^(-2phi) lap_flat
      std::vector<double> next(phi.values);
      for (std::size_t k = 0; k < next.size(); ++k)
        next[k] += dt * rate.values[k];
      return MetricState(Conformal2D{ScalarField(phi.grid, std::move(next))});
    }
    case MetricFamily::homogeneous_einstein: {
      const HomogeneousEinstein& s = metric.sphere();
      double slope = -2.0 * (s.dim - 1);
      if (s.scale + slope * dt <= 0.0)
        throw ExtinctionError(
            "ricci_step: sphere extinguishes within the step",
            s.scale / (2.0 * (s.dim - 1)));
      // Classical RK4; the slope is constant so the update is exact.
      double k1 = slope, k2 = slope, k3 = slope, k4 = slope;
      double c_next = s.scale + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      return MetricState(HomogeneousEinstein{s.dim, c_next});
    }
  }
  throw Error("ricci_step: unreachable");
}

namespace {

void fill_volume_residuals(FlowTrajectory& traj) {
  std::size_t n = traj.size();
  traj.volume_residuals.assign(n, 0.0);
  if (traj.metrics[0].family() == MetricFamily::homogeneous_einstein) {
    for (std::size_t k = 0; k < n; ++k) {
      const HomogeneousEinstein& s = traj.metrics[k].sphere();
      double vn = unit_sphere_volume(s.dim);
      double dvdt = 0.5 * s.dim * std::pow(s.scale, 0.5 * s.dim - 1.0) * vn *
                    (-2.0 * (s.dim - 1));
      double r = s.dim * (s.dim - 1.0) / s.scale;
      double curv_integral = r * std::pow(s.scale, 0.5 * s.dim) * vn;
      traj.volume_residuals[k] = std::abs(dvdt + curv_integral);
    }
    return;
  }
  if (n < 2) return;
  std::vector<double> curv_integrals(n);
  for (std::size_t k = 0; k < n; ++k)
    curv_integrals[k] =
        integrate(scalar_curvature(traj.metrics[k]), traj.metrics[k]);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t lo = k == 0 ? 0 : k - 1;
    std::size_t hi = k == n - 1 ? n - 1 : k + 1;
    double dvdt = (traj.volumes[hi] - traj.volumes[lo]) /
                  (traj.times[hi] - traj.times[lo]);
    traj.volume_residuals[k] = std::abs(dvdt + curv_integrals[k]);
  }
}

}  // namespace

FlowTrajectory flow_run(const MetricState& initial, const FlowConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw Error("flow_run: dt must be positive");
  if (cfg.t_end < 0.0) throw Error("flow_run: t_end must be nonnegative");
  if (cfg.snapshot_every < 1)
    throw Error("flow_run: snapshot_every must be at least 1");
  if (!(cfg.safety_factor > 0.0) || cfg.safety_factor > 1.0)
    throw Error("flow_run: safety_factor must lie in (0, 1]");

  long long nsteps =
      static_cast<long long>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
  if (nsteps < 0) nsteps = 0;

  FlowTrajectory traj;
  traj.snapshot_every = cfg.snapshot_every;
  MetricState current = initial;
  traj.times.push_back(0.0);
  traj.metrics.push_back(current);
  for (long long step = 1; step <= nsteps; ++step) {
    if (current.family() == MetricFamily::conformal2d) {
      double bound =
          cfg.safety_factor * conformal_step_bound(current.conformal());
      if (cfg.dt > bound * kBoundSlack)
        throw CflError("flow_run: dt exceeds the parabolic bound " +
                       std::to_string(bound) + " at step " +
                       std::to_string(step));
    }
    current = ricci_step(current, cfg.dt);
    if (step % cfg.snapshot_every == 0 || step == nsteps) {
      traj.times.push_back(step * cfg.dt);
      traj.metrics.push_back(current);
    }
  }
  traj.volumes.resize(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k)
    traj.volumes[k] = metric_volume(traj.metrics[k]);
  fill_volume_residuals(traj);
  return traj;
}

FlowTrajectory conjugate_heat_backward(const FlowTrajectory& traj,
                                       const DensityField& u_terminal) {
  if (traj.size() == 0) throw StateError("conjugate heat: empty trajectory");
  if (traj.snapshot_every != 1)
    throw StateError(
        "conjugate heat: trajectory must record every step (snapshot_every = "
        "1)");
  const MetricState& final_metric = traj.metrics.back();
  double mass = density_mass(u_terminal, final_metric);
  if (std::abs(mass - 1.0) > 1e-10)
    throw StateError(
        "conjugate heat: u_terminal is not normalized against the final "
        "metric (mass = " +
        std::to_string(mass) + ")");

  std::size_t n = traj.size();
  // built back to front, then reversed
  std::vector<DensityField> rev;
  rev.reserve(n);
  rev.emplace_back(u_terminal.field, true);

  switch (final_metric.family()) {
    case MetricFamily::homogeneous_einstein: {
      // Uniform density: u vol(t) is conserved exactly, u(t) = M / vol(t).
      double conserved = u_terminal.field.values[0] * metric_volume(final_metric);
      for (std::size_t k = n - 1; k-- > 0;) {
        double v = metric_volume(traj.metrics[k]);
        rev.emplace_back(
            ScalarField(ManifoldGrid::sphere_token(), {conserved / v}), true);
      }
      break;
    }
    case MetricFamily::conformal2d: {
      // Chart-mass update: with mu = u e^(2phi), the conjugate equation along
      // the flow reads d_s mu = lap_flat(u), whose flux form telescopes, so
      // the discrete mass never drifts.  Equivalently
      //   u_k = e^{2(phi_{k+1} - phi_k)} (u_{k+1} + dt lap_g u_{k+1}).
      for (std::size_t k = n - 1; k-- > 0;) {
        const MetricState& m_next = traj.metrics[k + 1];
        const MetricState& m_cur = traj.metrics[k];
        double dt = traj.times[k + 1] - traj.times[k];
        double bound = conformal_step_bound(m_next.conformal());
        if (dt > bound * kBoundSlack)
          throw CflError("conjugate heat: dt exceeds the parabolic bound " +
                         std::to_string(bound));
        const ScalarField& u_next = rev.back().field;
        ScalarField lap = laplace_beltrami(u_next, m_next);
        const std::vector<double>& phi_next =
            m_next.conformal().log_conformal.values;
        const std::vector<double>& phi_cur =
            m_cur.conformal().log_conformal.values;
        std::vector<double> u(u_next.values.size());
        for (std::size_t i = 0; i < u.size(); ++i)
          u[i] = std::exp(2.0 * (phi_next[i] - phi_cur[i])) *
                 (u_next.values[i] + dt * lap.values[i]);
        check_positive_everywhere(u, traj.times[k]);
        rev.emplace_back(ScalarField(u_next.grid, std::move(u)), true);
      }
      break;
    }
    case MetricFamily::prescribed1d: {
      for (std::size_t k = n - 1; k-- > 0;) {
        const MetricState& m_next = traj.metrics[k + 1];
        double dt = traj.times[k + 1] - traj.times[k];
        double bound = parabolic_step_bound(m_next);
        if (dt > bound * kBoundSlack)
          throw CflError("conjugate heat: dt exceeds the parabolic bound " +
                         std::to_string(bound));
        const ScalarField& u_next = rev.back().field;
        ScalarField lap = laplace_beltrami(u_next, m_next);
        const std::vector<double>& r = m_next.prescribed().curvature.values;
        std::vector<double> u(u_next.values.size());
        for (std::size_t i = 0; i < u.size(); ++i)
          u[i] = u_next.values[i] +
                 dt * (lap.values[i] - r[i] * u_next.values[i]);
        check_positive_everywhere(u, traj.times[k]);
        rev.emplace_back(ScalarField(u_next.grid, std::move(u)), true);
      }
      break;
    }
  }

  FlowTrajectory out = traj;
  out.densities.assign(rev.rbegin(), rev.rend());

  double max_drift = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    max_drift = std::max(
        max_drift,
        std::abs(density_mass(out.densities[k], out.metrics[k]) - 1.0));
  if (max_drift > 1e-6)
    throw ConservationError("conjugate heat: mass drift " +
                            std::to_string(max_drift) + " exceeds 1e-6");
  return out;
}

std::vector<double> f_evolution_residual(const FlowTrajectory& traj) {
  if (!traj.has_densities())
    throw StateError("f_evolution_residual: trajectory carries no densities");
  if (traj.size() < 3)
    throw StateError("f_evolution_residual: need at least three snapshots");

  std::size_t n = traj.size();
  std::vector<double> norms;
  norms.reserve(n - 2);

  if (traj.metrics[0].family() == MetricFamily::homogeneous_einstein) {
    for (std::size_t k = 1; k + 1 < n; ++k) {
      double f_prev = -std::log(traj.densities[k - 1].field.values[0]);
      double f_next = -std::log(traj.densities[k + 1].field.values[0]);
      double dfdt =
          (f_next - f_prev) / (traj.times[k + 1] - traj.times[k - 1]);
      const HomogeneousEinstein& s = traj.metrics[k].sphere();
      double r = s.dim * (s.dim - 1.0) / s.scale;
      double resid = dfdt + r;  // lap f and |grad f|^2 vanish
      norms.push_back(std::abs(resid) *
                      std::sqrt(metric_volume(traj.metrics[k])));
    }
    return norms;
  }

  std::vector<ScalarField> f;
  f.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> v(traj.densities[k].field.values.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] = -std::log(traj.densities[k].field.values[i]);
    f.emplace_back(traj.densities[k].field.grid, std::move(v));
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const MetricState& m = traj.metrics[k];
    ScalarField lap = laplace_beltrami(f[k], m);
    ScalarField gsq = gradient_sq(f[k], m);
    ScalarField curv = scalar_curvature(m);
    double inv_span = 1.0 / (traj.times[k + 1] - traj.times[k - 1]);
    std::vector<double> r(f[k].values.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = (f[k + 1].values[i] - f[k - 1].values[i]) * inv_span +
             lap.values[i] - gsq.values[i] + curv.values[i];
    ScalarField resid(f[k].grid, std::move(r));
    norms.push_back(std::sqrt(weighted_inner(resid, resid, m)));
  }
  return norms;
}

SphereExact sphere_exact(int dim, double c0, double t) {
  if (dim < 2) throw ShapeError("sphere_exact: dimension must be at least 2");
  if (!(c0 > 0.0)) throw PositivityError("sphere_exact: c0 must be positive");
  double c = c0 - 2.0 * (dim - 1) * t;
  if (c <= 0.0)
    throw ExtinctionError("sphere_exact: time is past extinction",
                          c0 / (2.0 * (dim - 1)));
  SphereExact out;
  out.c = c;
  out.curvature = dim * (dim - 1.0) / c;
  out.volume = std::pow(c, 0.5 * dim) * unit_sphere_volume(dim);
  return out;
}

}  // namespace fisherflow
