#include "fisherflow/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include "fisherflow/errors.hpp"

namespace fisherflow {

namespace {

void require_same_grid(const ManifoldGrid& a, const ManifoldGrid& b,
                       const char* what) {
  if (a != b) throw ShapeError(std::string(what) + ": grids do not match");
}

struct CgOutcome {
  std::vector<double> x;
  int iterations = 0;
  double relres = 0.0;
  std::vector<double> history;
  bool converged = false;
};

// Plain conjugate gradients in the system's dV inner product.  The residual
// is re-projected onto the zero-mean complement every iteration when the
// system is gauged, which keeps roundoff from feeding the kernel.
CgOutcome run_cg(const WeakSystem& sys, const std::vector<double>& b,
                 double tol, int max_iter) {
  const std::size_t nu = sys.unknown_count();
  const bool project = sys.gauge == Gauge::zero_mean;
  CgOutcome out;
  out.x.assign(nu, 0.0);
  std::vector<double> r = b;
  if (project) sys.project_zero_mean(r);
  const double bnorm = std::sqrt(sys.inner(r, r));
  if (!(bnorm > 0.0)) {
    out.converged = true;
    return out;
  }
  std::vector<double> pdir = r;
  std::vector<double> ap(nu);
  double rr = sys.inner(r, r);
  out.relres = std::sqrt(rr) / bnorm;
  if (out.relres <= tol) {
    out.converged = true;
    return out;
  }
  for (int it = 0; it < max_iter; ++it) {
    sys.apply(pdir, ap);
    const double pap = sys.inner(pdir, ap);
    if (!(pap > 0.0))
      throw ConvergenceError(
          "conjugate gradients met a direction of nonpositive curvature; "
          "the system is not positive definite",
          out.history);
    const double alpha = rr / pap;
    for (std::size_t k = 0; k < nu; ++k) out.x[k] += alpha * pdir[k];
    for (std::size_t k = 0; k < nu; ++k) r[k] -= alpha * ap[k];
    if (project) sys.project_zero_mean(r);
    const double rr_new = sys.inner(r, r);
    out.iterations = it + 1;
    out.relres = std::sqrt(rr_new) / bnorm;
    out.history.push_back(out.relres);
    if (out.relres <= tol) {
      out.converged = true;
      break;
    }
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t k = 0; k < nu; ++k) pdir[k] = r[k] + beta * pdir[k];
  }
  return out;
}

}  // namespace

ScalarField phase_rhs(const DensityField& p, const MetricState& metric) {
  const ManifoldGrid& grid = metric.grid();
  require_same_grid(p.grid(), grid, "phase_rhs");
  ScalarField lap = laplace_beltrami(p.field, metric);
  ScalarField curv = scalar_curvature(metric);
  std::vector<double> out(grid.node_count());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = curv.values[k] * p.field.values[k] - lap.values[k];
  return ScalarField(grid, std::move(out));
}

bool WeakSystem::dirichlet() const {
  return metric.grid().boundary() == Boundary::dirichlet_zero;
}

void WeakSystem::apply(const std::vector<double>& x,
                       std::vector<double>& y) const {
  const ManifoldGrid& grid = metric.grid();
  if (x.size() != unknown_count())
    throw ShapeError("apply: vector length does not match unknown count");
  y.assign(x.size(), 0.0);
  const double inv_m = 1.0 / mass_param;
  if (grid.axes() == 1) {
    const int n = grid.resolution(0);
    const double inv_h2 = 1.0 / (grid.spacing(0) * grid.spacing(0));
    if (grid.periodic()) {
      for (int i = 0; i < n; ++i) {
        const int ip = (i + 1) % n;
        const int im = (i + n - 1) % n;
        const double flux = edge_coeff_x[i] * (x[ip] - x[i]) -
                            edge_coeff_x[im] * (x[i] - x[im]);
        y[i] = -inv_m * inv_sqrt_g[i] * flux * inv_h2 + kappa * x[i];
      }
    } else {
      // Unknown k sits at node k+1; the eliminated boundary values act as
      // zeros here because assembly folded them into the right-hand side.
      const int nu = n - 1;
      for (int k = 0; k < nu; ++k) {
        const double xl = k > 0 ? x[k - 1] : 0.0;
        const double xr = k + 1 < nu ? x[k + 1] : 0.0;
        const double flux = edge_coeff_x[k + 1] * (xr - x[k]) -
                            edge_coeff_x[k] * (x[k] - xl);
        y[k] = -inv_m * inv_sqrt_g[k + 1] * flux * inv_h2 + kappa * x[k];
      }
    }
    return;
  }
  const int nx = grid.resolution(0);
  const int ny = grid.resolution(1);
  const double ihx2 = 1.0 / (grid.spacing(0) * grid.spacing(0));
  const double ihy2 = 1.0 / (grid.spacing(1) * grid.spacing(1));
  for (int i = 0; i < nx; ++i) {
    const int ip = (i + 1) % nx;
    const int im = (i + nx - 1) % nx;
    for (int j = 0; j < ny; ++j) {
      const int jp = (j + 1) % ny;
      const int jm = (j + ny - 1) % ny;
      const std::size_t c = grid.index(i, j);
      const double fx =
          edge_coeff_x[c] * (x[grid.index(ip, j)] - x[c]) -
          edge_coeff_x[grid.index(im, j)] * (x[c] - x[grid.index(im, j)]);
      const double fy =
          edge_coeff_y[c] * (x[grid.index(i, jp)] - x[c]) -
          edge_coeff_y[grid.index(i, jm)] * (x[c] - x[grid.index(i, jm)]);
      y[c] = -inv_m * inv_sqrt_g[c] * (fx * ihx2 + fy * ihy2) + kappa * x[c];
    }
  }
}

double WeakSystem::inner(const std::vector<double>& x,
                         const std::vector<double>& y) const {
  if (x.size() != unknown_count() || y.size() != unknown_count())
    throw ShapeError("inner: vector length does not match unknown count");
  double acc = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) acc += x[k] * y[k] * weight[k];
  return acc;
}

double WeakSystem::quadratic_form(const std::vector<double>& x) const {
  std::vector<double> ax;
  apply(x, ax);
  return inner(ax, x);
}

void WeakSystem::project_zero_mean(std::vector<double>& x) const {
  if (x.size() != unknown_count())
    throw ShapeError("project: vector length does not match unknown count");
  double s = 0.0;
  double w = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    s += x[k] * weight[k];
    w += weight[k];
  }
  const double mean = s / w;
  for (double& v : x) v -= mean;
}

ScalarField WeakSystem::to_field(const std::vector<double>& x) const {
  const ManifoldGrid& grid = metric.grid();
  if (x.size() != unknown_count())
    throw ShapeError("to_field: vector length does not match unknown count");
  if (!dirichlet()) return ScalarField(grid, x);
  std::vector<double> full(grid.node_count());
  full.front() = dirichlet_values[0];
  full.back() = dirichlet_values[1];
  for (std::size_t k = 0; k < x.size(); ++k) full[k + 1] = x[k];
  return ScalarField(grid, std::move(full));
}

std::vector<double> WeakSystem::restrict_to_unknowns(
    const ScalarField& f) const {
  require_same_grid(f.grid, metric.grid(), "restrict_to_unknowns");
  if (!dirichlet()) return f.values;
  return std::vector<double>(f.values.begin() + 1, f.values.end() - 1);
}

WeakSystem assemble_weak(const DensityField& p, const MetricState& metric,
                         double mass_param, double kappa, Gauge gauge,
                         std::array<double, 2> dirichlet_values) {
  const ManifoldGrid& grid = metric.grid();
  require_same_grid(p.grid(), grid, "assemble_weak");
  if (!(mass_param > 0.0) || !std::isfinite(mass_param))
    throw PositivityError("mass parameter must be positive and finite");
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw PositivityError("kappa must be nonnegative and finite");
  const bool closed = grid.periodic();
  if (closed && (dirichlet_values[0] != 0.0 || dirichlet_values[1] != 0.0))
    throw StateError("Dirichlet data supplied for a closed grid");
  if (gauge == Gauge::zero_mean) {
    if (!closed) throw StateError("zero-mean gauge requires a closed grid");
    if (kappa > 0.0)
      throw StateError(
          "zero-mean gauge applies to kappa = 0 only; with kappa > 0 the "
          "system is already definite");
  }
  if (closed && kappa == 0.0 && gauge == Gauge::none)
    throw UnderdeterminedError(
        "kappa = 0 on a closed grid leaves the constants in the kernel; "
        "select the zero-mean gauge");

  WeakSystem sys{metric, p.field.values,  mass_param, kappa, gauge, {},
                 dirichlet_values, {}, {}, {}, {}};

  const ScalarField sg = volume_element(metric);
  const std::size_t nc = grid.node_count();
  sys.inv_sqrt_g.resize(nc);
  for (std::size_t k = 0; k < nc; ++k)
    sys.inv_sqrt_g[k] = 1.0 / sg.values[k];

  const std::vector<double>& pv = p.field.values;
  if (grid.axes() == 1) {
    const int n = grid.resolution(0);
    sys.edge_coeff_x.resize(static_cast<std::size_t>(n));
    if (grid.periodic()) {
      for (int i = 0; i < n; ++i)
        sys.edge_coeff_x[i] = 0.5 * (pv[i] + pv[(i + 1) % n]);
    } else {
      for (int i = 0; i < n; ++i)
        sys.edge_coeff_x[i] = 0.5 * (pv[i] + pv[i + 1]);
    }
  } else {
    const int nx = grid.resolution(0);
    const int ny = grid.resolution(1);
    sys.edge_coeff_x.resize(nc);
    sys.edge_coeff_y.resize(nc);
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j) {
        const std::size_t c = grid.index(i, j);
        sys.edge_coeff_x[c] = 0.5 * (pv[c] + pv[grid.index((i + 1) % nx, j)]);
        sys.edge_coeff_y[c] = 0.5 * (pv[c] + pv[grid.index(i, (j + 1) % ny)]);
      }
  }

  const bool dir = !closed;
  const std::size_t nu = dir ? nc - 2 : nc;
  sys.weight.resize(nu);
  for (std::size_t k = 0; k < nu; ++k) {
    const std::size_t node = dir ? k + 1 : k;
    sys.weight[k] = grid.quad_weight(node) * sg.values[node];
  }

  const ScalarField f = phase_rhs(p, metric);
  sys.rhs = sys.restrict_to_unknowns(f);
  if (dir) {
    // Boundary lift: the eliminated Dirichlet columns move to the right side.
    const int n = grid.resolution(0);
    const double inv_h2 = 1.0 / (grid.spacing(0) * grid.spacing(0));
    const double inv_m = 1.0 / mass_param;
    sys.rhs.front() += inv_m * sys.inv_sqrt_g[1] * sys.edge_coeff_x[0] *
                       dirichlet_values[0] * inv_h2;
    sys.rhs.back() += inv_m * sys.inv_sqrt_g[nc - 2] *
                      sys.edge_coeff_x[n - 1] * dirichlet_values[1] * inv_h2;
  }
  return sys;
}

SolveReport solve(const WeakSystem& system, double tol, int max_iter) {
  if (!(tol > 0.0) || !std::isfinite(tol))
    throw PositivityError("solver tolerance must be positive");
  if (max_iter < 1) throw PositivityError("max_iter must be at least 1");
  std::vector<double> b = system.rhs;
  if (b.size() != system.unknown_count())
    throw ShapeError("right-hand side length does not match unknown count");

  double defect = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) defect += b[k] * system.weight[k];
  const double bnorm = std::sqrt(system.inner(b, b));
  if (system.gauge == Gauge::zero_mean) {
    if (bnorm > 0.0 && std::abs(defect) > tol * bnorm)
      throw CompatibilityError(
          "zero-mean solve needs integral(rhs dV) = 0; defect " +
          std::to_string(defect));
    system.project_zero_mean(b);
  }

  CgOutcome cg = run_cg(system, b, tol, max_iter);
  if (!cg.converged)
    throw ConvergenceError(
        "conjugate gradients did not reach tolerance within " +
            std::to_string(max_iter) + " iterations",
        cg.history);

  const double eps =
      *std::min_element(system.density.begin(), system.density.end());
  DensityField pd(ScalarField(system.metric.grid(), system.density));
  const double coer =
      coercivity_report(pd, system.mass_param, system.kappa,
                        system.metric.grid().boundary())
          .constant;
  return SolveReport{system.to_field(cg.x), cg.iterations, cg.relres,
                     eps,                   coer,          defect};
}

RitzResult smallest_ritz(const WeakSystem& system, int max_outer) {
  const std::size_t nu = system.unknown_count();
  // Deterministic start vector; the seed is part of the toolkit's contract
  // that repeated runs produce identical output.
  std::mt19937 rng(20240315u);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> x(nu);
  for (double& v : x) v = dist(rng);
  if (system.gauge == Gauge::zero_mean) system.project_zero_mean(x);
  double nrm = std::sqrt(system.inner(x, x));
  if (!(nrm > 0.0)) throw StateError("degenerate inverse-power start vector");
  for (double& v : x) v /= nrm;

  const int inner_cap = static_cast<int>(10 * nu) + 2000;
  std::vector<double> history;
  std::vector<double> ax(nu);
  double rho_prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_outer; ++it) {
    CgOutcome cg = run_cg(system, x, 1e-12, inner_cap);
    if (!cg.converged)
      throw ConvergenceError("inverse power inner solve stalled", cg.history);
    std::vector<double> y = std::move(cg.x);
    if (system.gauge == Gauge::zero_mean) system.project_zero_mean(y);
    system.apply(y, ax);
    const double rho = system.inner(ax, y) / system.inner(y, y);
    history.push_back(rho);
    const double yn = std::sqrt(system.inner(y, y));
    for (double& v : y) v /= yn;
    if (it > 0 && std::abs(rho - rho_prev) < 1e-10)
      return RitzResult{rho, std::move(y), it + 1};
    rho_prev = rho;
    x = std::move(y);
  }
  throw ConvergenceError("inverse power iteration did not converge", history);
}

CoercivityReport coercivity_report(const DensityField& p, double mass_param,
                                   double kappa, Boundary boundary) {
  const ManifoldGrid& grid = p.grid();
  grid.require_grid("coercivity_report");
  if (boundary != grid.boundary())
    throw StateError("boundary condition does not match the grid topology");
  if (!(mass_param > 0.0) || !std::isfinite(mass_param))
    throw PositivityError("mass parameter must be positive and finite");
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw PositivityError("kappa must be nonnegative and finite");

  CoercivityReport rep;
  rep.epsilon = p.field.min();
  const bool dir = boundary == Boundary::dirichlet_zero;

  std::optional<double> c;
  if (kappa == 0.0 || dir) {
    // Poincare constant of the flat grid, c = 1/lambda_1 of -lap.
    const MetricState flat = flat_metric(grid);
    const DensityField unit(ScalarField::constant(grid, 1.0));
    const Gauge g = dir ? Gauge::none : Gauge::zero_mean;
    const WeakSystem sys = assemble_weak(unit, flat, 1.0, 0.0, g);
    c = 1.0 / smallest_ritz(sys).value;
  }
  if (kappa > 0.0)
    rep.constant = std::min(rep.epsilon / mass_param, kappa);
  else
    rep.constant = rep.epsilon / (mass_param * (1.0 + *c));
  if (dir) rep.friedrich_c = c;
  return rep;
}

ScalarField oracle_1d_phase(const ScalarField& p, const ScalarField& r,
                            double c, double k) {
  const ManifoldGrid& grid = p.grid;
  if (grid.topology() != Topology::interval)
    throw ShapeError("closed-form phase solution lives on an interval grid");
  require_same_grid(r.grid, grid, "oracle_1d_phase");
  for (double v : p.values)
    if (!(v > 0.0) || !std::isfinite(v))
      throw PositivityError("closed-form phase solution requires P > 0");

  const int nn = grid.nodes(0);
  const double h = grid.spacing(0);
  auto cumtrapz = [nn, h](const std::vector<double>& f) {
    std::vector<double> out(static_cast<std::size_t>(nn), 0.0);
    for (int i = 1; i < nn; ++i)
      out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    return out;
  };

  std::vector<double> rp(nn), invp(nn);
  for (int i = 0; i < nn; ++i) {
    rp[i] = r.values[i] * p.values[i];
    invp[i] = 1.0 / p.values[i];
  }
  const std::vector<double> irp = cumtrapz(rp);
  std::vector<double> over_p(nn);
  for (int i = 0; i < nn; ++i) over_p[i] = invp[i] * irp[i];
  const std::vector<double> iirp = cumtrapz(over_p);
  const std::vector<double> iinvp = cumtrapz(invp);

  std::vector<double> s(nn);
  for (int i = 0; i < nn; ++i)
    s[i] = std::log(p.values[i]) - iirp[i] + c * iinvp[i] + k;
  return ScalarField(grid, std::move(s));
}

double phase_oracle_residual(const ScalarField& p, const ScalarField& r,
                             const ScalarField& s) {
  const ManifoldGrid& grid = p.grid;
  if (grid.topology() != Topology::interval)
    throw ShapeError("phase residual lives on an interval grid");
  require_same_grid(r.grid, grid, "phase_oracle_residual");
  require_same_grid(s.grid, grid, "phase_oracle_residual");

  const int nn = grid.nodes(0);
  const double h = grid.spacing(0);
  const MetricState flat = flat_metric(grid);
  const ScalarField lap = laplace_beltrami(p, flat);

  double acc = 0.0;
  for (int i = 1; i + 1 < nn; ++i) {
    const double ce_r = 0.5 * (p.values[i] + p.values[i + 1]);
    const double ce_l = 0.5 * (p.values[i - 1] + p.values[i]);
    const double div = (ce_r * (s.values[i + 1] - s.values[i]) -
                        ce_l * (s.values[i] - s.values[i - 1])) /
                       (h * h);
    const double res = div - (lap.values[i] - r.values[i] * p.values[i]);
    acc += res * res * h;
  }
  return std::sqrt(acc);
}

}  // namespace fisherflow
