#pragma once

#include <array>

#include "fisherflow/field.hpp"
#include "fisherflow/metric.hpp"

namespace fisherflow {

// sqrt(det g) per node: 1 for the flat line element, e^(2 phi) on the
// conformal torus.  The analytic sphere family is rejected.
ScalarField volume_element(const MetricState& metric);

// Node-weight quadrature of f against the metric volume form.  Uniform
// weights on periodic axes, trapezoid weights on intervals; summation runs
// in a fixed node order so results are reproducible bit for bit.
double integrate(const ScalarField& f, const MetricState& metric);

// integrate(f*g dV) without forming the product field.
double weighted_inner(const ScalarField& f, const ScalarField& g,
                      const MetricState& metric);

// Laplace-Beltrami operator, div grad convention (nonpositive spectrum),
// discretized in conservative flux form so that the discrete divergence
// theorem holds exactly on closed grids.  On the conformal torus the flux
// coefficient sqrt(g) g^{mn} is the identity, so the operator reduces to
// e^(-2 phi) times the flat second-difference stencil.  Interval grids use
// centered stencils inside and one-sided second-order stencils at the ends.
ScalarField laplace_beltrami(const ScalarField& f, const MetricState& metric);

// |grad f|^2 with the inverse metric.  Per axis the squared one-sided
// differences on the two adjacent half-edges are averaged; this is
// second-order at the node and exactly summation-compatible with the flux
// Laplacian, so integrate(gradient_sq(f)) equals integrate(-laplace(f)*f)
// on closed grids to rounding.
ScalarField gradient_sq(const ScalarField& f, const MetricState& metric);

// Scalar curvature per node.  Prescribed1D returns its stored profile,
// the conformal torus computes R = -2 e^(-2 phi) lap_flat(phi), and the
// homogeneous sphere family returns the constant n(n-1)/c as a one-value
// field on the sphere token grid.
ScalarField scalar_curvature(const MetricState& metric);

// Row-major 3x3 matrix.
using Mat3 = std::array<double, 9>;

double det3(const Mat3& m);

struct DetDerivative {
  double analytic;  // trace(A^{-1} B) det(A)
  double numeric;   // central difference of det(A + s B) at s = 0
};

// Directional derivative of the determinant at A along B, evaluated both
// through the trace identity and through a central finite difference with
// step 1e-5.  Throws SingularMatrixError when A is numerically singular.
DetDerivative det_derivative_check(const Mat3& a, const Mat3& b);

}  // namespace fisherflow
