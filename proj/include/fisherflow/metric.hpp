#pragma once

#include <utility>
#include <variant>

#include "fisherflow/field.hpp"
#include "fisherflow/grid.hpp"

namespace fisherflow {

enum class MetricFamily { prescribed1d, conformal2d, homogeneous_einstein };

// Flat line element on a 1-D grid with a prescribed curvature profile R(x).
// The curvature is data for the elliptic problems, not derived from the
// metric; the Ricci flow leaves this family fixed.
struct Prescribed1D {
  ScalarField curvature;
};

// g = e^(2 phi) (dx^2 + dy^2) on a 2-torus.
struct Conformal2D {
  ScalarField log_conformal;  // phi
};

// c times the unit round n-sphere, n >= 2, c > 0.  Analytic family: no grid.
struct HomogeneousEinstein {
  int dim;
  double scale;  // c
};

class MetricState {
 public:
  explicit MetricState(Prescribed1D m) : v_(std::move(m)) {
    const ManifoldGrid& g = prescribed().curvature.grid;
    if (g.axes() != 1 || !g.grid_backed())
      throw ShapeError("Prescribed1D requires a 1-D grid");
  }
  explicit MetricState(Conformal2D m) : v_(std::move(m)) {
    if (conformal().log_conformal.grid.topology() != Topology::torus2d)
      throw ShapeError("Conformal2D requires a torus2d grid");
  }
  explicit MetricState(HomogeneousEinstein m) : v_(m) {
    if (m.dim < 2) throw ShapeError("sphere dimension must be at least 2");
    if (!(m.scale > 0.0))
      throw PositivityError("sphere scale must be positive");
  }

  MetricFamily family() const {
    if (std::holds_alternative<Prescribed1D>(v_))
      return MetricFamily::prescribed1d;
    if (std::holds_alternative<Conformal2D>(v_))
      return MetricFamily::conformal2d;
    return MetricFamily::homogeneous_einstein;
  }

  bool grid_backed() const {
    return family() != MetricFamily::homogeneous_einstein;
  }

  const ManifoldGrid& grid() const {
    switch (family()) {
      case MetricFamily::prescribed1d: return prescribed().curvature.grid;
      case MetricFamily::conformal2d: return conformal().log_conformal.grid;
      default:
        throw UnsupportedFamilyError("sphere family carries no grid");
    }
  }

  const Prescribed1D& prescribed() const { return std::get<Prescribed1D>(v_); }
  const Conformal2D& conformal() const { return std::get<Conformal2D>(v_); }
  const HomogeneousEinstein& sphere() const {
    return std::get<HomogeneousEinstein>(v_);
  }

 private:
  std::variant<Prescribed1D, Conformal2D, HomogeneousEinstein> v_;
};

// Flat reference metric on a node-backed grid: zero prescribed curvature on
// 1-D grids, zero log-conformal factor on tori.
inline MetricState flat_metric(const ManifoldGrid& grid) {
  grid.require_grid("flat_metric");
  if (grid.axes() == 1)
    return MetricState(Prescribed1D{ScalarField::constant(grid, 0.0)});
  return MetricState(Conformal2D{ScalarField::constant(grid, 0.0)});
}

}  // namespace fisherflow
