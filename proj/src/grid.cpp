#include "fisherflow/grid.hpp"

namespace fisherflow {

std::string to_string(Topology t) {
  switch (t) {
    case Topology::interval: return "interval";
    case Topology::circle: return "circle";
    case Topology::torus2d: return "torus2d";
    case Topology::sphere_family: return "sphere_family";
  }
  return "?";
}

std::string to_string(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "dirichlet_zero";
}

ManifoldGrid::ManifoldGrid(Topology t, Boundary b, int nx, int ny, double lx,
                           double ly)
    : topology_(t), boundary_(b), nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
  if (topology_ == Topology::sphere_family) return;
  if (nx_ < 3 || (topology_ == Topology::torus2d && ny_ < 3))
    throw ShapeError("grid resolution must be at least 3 per axis");
  if (lx_ <= 0.0 || (topology_ == Topology::torus2d && ly_ <= 0.0))
    throw ShapeError("grid side lengths must be positive");
}

ManifoldGrid ManifoldGrid::interval(int n, double length) {
  return ManifoldGrid(Topology::interval, Boundary::dirichlet_zero, n, 0,
                      length, 0.0);
}

ManifoldGrid ManifoldGrid::circle(int n, double length) {
  return ManifoldGrid(Topology::circle, Boundary::periodic, n, 0, length, 0.0);
}

ManifoldGrid ManifoldGrid::torus(int nx, int ny, double lx, double ly) {
  return ManifoldGrid(Topology::torus2d, Boundary::periodic, nx, ny, lx, ly);
}

ManifoldGrid ManifoldGrid::sphere_token() {
  return ManifoldGrid(Topology::sphere_family, Boundary::periodic, 0, 0, 0.0,
                      0.0);
}

int ManifoldGrid::axes() const {
  return topology_ == Topology::torus2d ? 2 : 1;
}

int ManifoldGrid::resolution(int axis) const {
  return axis == 0 ? nx_ : ny_;
}

double ManifoldGrid::side(int axis) const { return axis == 0 ? lx_ : ly_; }

double ManifoldGrid::spacing(int axis) const {
  return side(axis) / resolution(axis);
}

int ManifoldGrid::nodes(int axis) const {
  int n = resolution(axis);
  return topology_ == Topology::interval ? n + 1 : n;
}

std::size_t ManifoldGrid::node_count() const {
  if (topology_ == Topology::sphere_family) return 1;  // one uniform value
  std::size_t count = static_cast<std::size_t>(nodes(0));
  if (axes() == 2) count *= static_cast<std::size_t>(nodes(1));
  return count;
}

double ManifoldGrid::coord(int axis, int index) const {
  return spacing(axis) * index;
}

double ManifoldGrid::quad_weight(std::size_t node) const {
  require_grid("quad_weight");
  if (topology_ == Topology::interval) {
    double h = spacing(0);
    std::size_t last = static_cast<std::size_t>(nodes(0)) - 1;
    return (node == 0 || node == last) ? 0.5 * h : h;
  }
  double w = spacing(0);
  if (axes() == 2) w *= spacing(1);
  return w;
}

bool ManifoldGrid::boundary_node(std::size_t node) const {
  if (topology_ != Topology::interval) return false;
  return node == 0 || node == static_cast<std::size_t>(nodes(0)) - 1;
}

std::size_t ManifoldGrid::index(int i, int j) const {
  if (axes() == 1) return static_cast<std::size_t>(i);
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(nodes(1)) +
         static_cast<std::size_t>(j);
}

bool ManifoldGrid::operator==(const ManifoldGrid& other) const {
  return topology_ == other.topology_ && boundary_ == other.boundary_ &&
         nx_ == other.nx_ && ny_ == other.ny_ && lx_ == other.lx_ &&
         ly_ == other.ly_;
}

void ManifoldGrid::require_grid(const char* op) const {
  if (!grid_backed())
    throw UnsupportedFamilyError(std::string(op) +
                                 ": sphere family carries no grid");
}

}  // namespace fisherflow
