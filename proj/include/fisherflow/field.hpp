#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "fisherflow/errors.hpp"
#include "fisherflow/grid.hpp"

namespace fisherflow {

// Node values over a ManifoldGrid, row-major with the second axis fastest.
struct ScalarField {
  ManifoldGrid grid;
  std::vector<double> values;

  ScalarField(ManifoldGrid g, std::vector<double> v)
      : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.node_count())
      throw ShapeError("field size does not match grid node count");
  }

  static ScalarField constant(const ManifoldGrid& g, double value) {
    return ScalarField(g, std::vector<double>(g.node_count(), value));
  }

  static ScalarField sample(const ManifoldGrid& g,
                            const std::function<double(double)>& f) {
    if (g.axes() != 1) throw ShapeError("1-D sampler on a 2-D grid");
    std::vector<double> v(g.node_count());
    for (int i = 0; i < g.nodes(0); ++i) v[i] = f(g.coord(0, i));
    return ScalarField(g, std::move(v));
  }

  static ScalarField sample(const ManifoldGrid& g,
                            const std::function<double(double, double)>& f) {
    if (g.axes() != 2) throw ShapeError("2-D sampler on a 1-D grid");
    std::vector<double> v(g.node_count());
    for (int i = 0; i < g.nodes(0); ++i)
      for (int j = 0; j < g.nodes(1); ++j)
        v[g.index(i, j)] = f(g.coord(0, i), g.coord(1, j));
    return ScalarField(g, std::move(v));
  }

  double& at(int i, int j = 0) { return values[grid.index(i, j)]; }
  double at(int i, int j = 0) const { return values[grid.index(i, j)]; }

  double min() const {
    double m = values[0];
    for (double v : values) m = std::min(m, v);
    return m;
  }
  double max() const {
    double m = values[0];
    for (double v : values) m = std::max(m, v);
    return m;
  }
};

// Positive scalar density u = e^(-f).  The flag records that the field has
// been scaled so its volume integral against a particular metric equals 1;
// operations that require it re-check against that metric.
struct DensityField {
  ScalarField field;
  bool normalized = false;

  DensityField(ScalarField f, bool is_normalized = false)
      : field(std::move(f)), normalized(is_normalized) {
    for (double v : field.values)
      if (!(v > 0.0) || !std::isfinite(v))
        throw PositivityError("density must be strictly positive and finite");
  }

  const ManifoldGrid& grid() const { return field.grid; }
};

}  // namespace fisherflow
