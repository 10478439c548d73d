#include "fisherflow/geometry.hpp"

#include <cmath>
#include <cstdlib>

namespace fisherflow {

namespace {

void require_finite(const ScalarField& f, const char* op) {
  for (double v : f.values)
    if (!std::isfinite(v))
      throw Error(std::string(op) + ": non-finite field value");
}

void require_same_grid(const ScalarField& f, const MetricState& metric,
                       const char* op) {
  metric.grid().require_grid(op);
  if (f.grid != metric.grid())
    throw ShapeError(std::string(op) + ": field and metric grids differ");
}

// e^(2 phi) per node for the conformal torus, 1 otherwise.
std::vector<double> sqrt_det_g(const MetricState& metric) {
  const ManifoldGrid& g = metric.grid();
  std::vector<double> s(g.node_count(), 1.0);
  if (metric.family() == MetricFamily::conformal2d) {
    const std::vector<double>& phi = metric.conformal().log_conformal.values;
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = std::exp(2.0 * phi[k]);
  }
  return s;
}

// Flat second differences, conservative closure per topology.
std::vector<double> flat_laplacian(const ScalarField& f) {
  const ManifoldGrid& g = f.grid;
  const std::vector<double>& u = f.values;
  std::vector<double> out(u.size(), 0.0);
  if (g.axes() == 1) {
    int n = g.nodes(0);
    double ih2 = 1.0 / (g.spacing(0) * g.spacing(0));
    if (g.periodic()) {
      for (int i = 0; i < n; ++i) {
        int l = i == 0 ? n - 1 : i - 1;
        int r = i == n - 1 ? 0 : i + 1;
        out[i] = (u[l] - 2.0 * u[i] + u[r]) * ih2;
      }
    } else {
      for (int i = 1; i < n - 1; ++i)
        out[i] = (u[i - 1] - 2.0 * u[i] + u[i + 1]) * ih2;
      // one-sided second-order closure at the interval ends
      out[0] = (2.0 * u[0] - 5.0 * u[1] + 4.0 * u[2] - u[3]) * ih2;
      out[n - 1] =
          (2.0 * u[n - 1] - 5.0 * u[n - 2] + 4.0 * u[n - 3] - u[n - 4]) * ih2;
    }
    return out;
  }
  int nx = g.nodes(0), ny = g.nodes(1);
  double ihx2 = 1.0 / (g.spacing(0) * g.spacing(0));
  double ihy2 = 1.0 / (g.spacing(1) * g.spacing(1));
  for (int i = 0; i < nx; ++i) {
    int iw = i == 0 ? nx - 1 : i - 1;
    int ie = i == nx - 1 ? 0 : i + 1;
    for (int j = 0; j < ny; ++j) {
      int js = j == 0 ? ny - 1 : j - 1;
      int jn = j == ny - 1 ? 0 : j + 1;
      std::size_t c = g.index(i, j);
      out[c] = (u[g.index(iw, j)] - 2.0 * u[c] + u[g.index(ie, j)]) * ihx2 +
               (u[g.index(i, js)] - 2.0 * u[c] + u[g.index(i, jn)]) * ihy2;
    }
  }
  return out;
}

// Per-axis average of the squared half-edge differences.
std::vector<double> flat_gradient_sq(const ScalarField& f) {
  const ManifoldGrid& g = f.grid;
  const std::vector<double>& u = f.values;
  std::vector<double> out(u.size(), 0.0);
  if (g.axes() == 1) {
    int n = g.nodes(0);
    double ih = 1.0 / g.spacing(0);
    auto edge = [&](int a, int b) {
      double d = (u[b] - u[a]) * ih;
      return d * d;
    };
    if (g.periodic()) {
      for (int i = 0; i < n; ++i) {
        int l = i == 0 ? n - 1 : i - 1;
        int r = i == n - 1 ? 0 : i + 1;
        out[i] = 0.5 * (edge(l, i) + edge(i, r));
      }
    } else {
      for (int i = 1; i < n - 1; ++i)
        out[i] = 0.5 * (edge(i - 1, i) + edge(i, i + 1));
      out[0] = edge(0, 1);
      out[n - 1] = edge(n - 2, n - 1);
    }
    return out;
  }
  int nx = g.nodes(0), ny = g.nodes(1);
  double ihx = 1.0 / g.spacing(0), ihy = 1.0 / g.spacing(1);
  for (int i = 0; i < nx; ++i) {
    int iw = i == 0 ? nx - 1 : i - 1;
    int ie = i == nx - 1 ? 0 : i + 1;
    for (int j = 0; j < ny; ++j) {
      int js = j == 0 ? ny - 1 : j - 1;
      int jn = j == ny - 1 ? 0 : j + 1;
      std::size_t c = g.index(i, j);
      double dxw = (u[c] - u[g.index(iw, j)]) * ihx;
      double dxe = (u[g.index(ie, j)] - u[c]) * ihx;
      double dys = (u[c] - u[g.index(i, js)]) * ihy;
      double dyn = (u[g.index(i, jn)] - u[c]) * ihy;
      out[c] = 0.5 * (dxw * dxw + dxe * dxe + dys * dys + dyn * dyn);
    }
  }
  return out;
}

}  // namespace

ScalarField volume_element(const MetricState& metric) {
  metric.grid().require_grid("volume_element");
  return ScalarField(metric.grid(), sqrt_det_g(metric));
}

double integrate(const ScalarField& f, const MetricState& metric) {
  require_same_grid(f, metric, "integrate");
  require_finite(f, "integrate");
  std::vector<double> s = sqrt_det_g(metric);
  const ManifoldGrid& g = f.grid;
  double acc = 0.0;
  for (std::size_t k = 0; k < f.values.size(); ++k)
    acc += f.values[k] * s[k] * g.quad_weight(k);
  return acc;
}

double weighted_inner(const ScalarField& f, const ScalarField& g,
                      const MetricState& metric) {
  require_same_grid(f, metric, "weighted_inner");
  if (g.grid != f.grid)
    throw ShapeError("weighted_inner: fields live on different grids");
  require_finite(f, "weighted_inner");
  require_finite(g, "weighted_inner");
  std::vector<double> s = sqrt_det_g(metric);
  const ManifoldGrid& grid = f.grid;
  double acc = 0.0;
  for (std::size_t k = 0; k < f.values.size(); ++k)
    acc += f.values[k] * g.values[k] * s[k] * grid.quad_weight(k);
  return acc;
}

ScalarField laplace_beltrami(const ScalarField& f, const MetricState& metric) {
  require_same_grid(f, metric, "laplace_beltrami");
  require_finite(f, "laplace_beltrami");
  std::vector<double> out = flat_laplacian(f);
  if (metric.family() == MetricFamily::conformal2d) {
    const std::vector<double>& phi = metric.conformal().log_conformal.values;
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] *= std::exp(-2.0 * phi[k]);
  }
  return ScalarField(f.grid, std::move(out));
}

ScalarField gradient_sq(const ScalarField& f, const MetricState& metric) {
  require_same_grid(f, metric, "gradient_sq");
  require_finite(f, "gradient_sq");
  std::vector<double> out = flat_gradient_sq(f);
  if (metric.family() == MetricFamily::conformal2d) {
    const std::vector<double>& phi = metric.conformal().log_conformal.values;
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] *= std::exp(-2.0 * phi[k]);
  }
  return ScalarField(f.grid, std::move(out));
}

ScalarField scalar_curvature(const MetricState& metric) {
  switch (metric.family()) {
    case MetricFamily::prescribed1d:
      return metric.prescribed().curvature;
    case MetricFamily::conformal2d: {
      const ScalarField& phi = metric.conformal().log_conformal;
      std::vector<double> out = flat_laplacian(phi);
      for (std::size_t k = 0; k < out.size(); ++k)
        out[k] *= -2.0 * std::exp(-2.0 * phi.values[k]);
      return ScalarField(phi.grid, std::move(out));
    }
    case MetricFamily::homogeneous_einstein: {
      const HomogeneousEinstein& s = metric.sphere();
      double r = static_cast<double>(s.dim) * (s.dim - 1) / s.scale;
      return ScalarField(ManifoldGrid::sphere_token(), {r});
    }
  }
  throw Error("scalar_curvature: unreachable");
}

double det3(const Mat3& m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) -
         m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

namespace {

// adj(A), so that A^{-1} = adj(A)/det(A).
Mat3 adjugate3(const Mat3& m) {
  Mat3 a;
  a[0] = m[4] * m[8] - m[5] * m[7];
  a[1] = m[2] * m[7] - m[1] * m[8];
  a[2] = m[1] * m[5] - m[2] * m[4];
  a[3] = m[5] * m[6] - m[3] * m[8];
  a[4] = m[0] * m[8] - m[2] * m[6];
  a[5] = m[2] * m[3] - m[0] * m[5];
  a[6] = m[3] * m[7] - m[4] * m[6];
  a[7] = m[1] * m[6] - m[0] * m[7];
  a[8] = m[0] * m[4] - m[1] * m[3];
  return a;
}

}  // namespace

DetDerivative det_derivative_check(const Mat3& a, const Mat3& b) {
  double det_a = det3(a);
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  if (std::abs(det_a) <= 1e-12 * std::max(1.0, scale * scale * scale))
    throw SingularMatrixError("det_derivative_check: A is singular");

  // trace(A^{-1} B) det(A) = trace(adj(A) B)
  Mat3 adj = adjugate3(a);
  double analytic = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) analytic += adj[3 * i + k] * b[3 * k + i];

  const double h = 1e-5;
  Mat3 plus = a, minus = a;
  for (int k = 0; k < 9; ++k) {
    plus[k] += h * b[k];
    minus[k] -= h * b[k];
  }
  double numeric = (det3(plus) - det3(minus)) / (2.0 * h);
  return DetDerivative{analytic, numeric};
}

}  // namespace fisherflow
