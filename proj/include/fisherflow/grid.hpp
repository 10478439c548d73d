#pragma once

#include <cstddef>
#include <string>

#include "fisherflow/errors.hpp"

namespace fisherflow {

enum class Topology { interval, circle, torus2d, sphere_family };
enum class Boundary { periodic, dirichlet_zero };

std::string to_string(Topology t);
std::string to_string(Boundary b);

// Structured uniform grid on an interval, a circle, or a 2-torus.
//
// The resolution n per axis fixes the spacing h = side/n.  Periodic axes
// store n nodes at x_i = i*h (the wrap edge closes the circle); interval
// axes store n+1 nodes including both endpoints, and the endpoints carry
// Dirichlet data.  Topology dictates the boundary treatment: intervals are
// dirichlet_zero, circles and tori are periodic.
//
// sphere_family is a token topology for the analytic round-sphere family;
// it carries no nodes and every grid quadrature/stencil operation rejects it.
class ManifoldGrid {
 public:
  static ManifoldGrid interval(int n, double length);
  static ManifoldGrid circle(int n, double length);
  static ManifoldGrid torus(int nx, int ny, double lx, double ly);
  static ManifoldGrid sphere_token();

  Topology topology() const { return topology_; }
  Boundary boundary() const { return boundary_; }
  bool periodic() const { return boundary_ == Boundary::periodic; }
  bool grid_backed() const { return topology_ != Topology::sphere_family; }

  int axes() const;
  int resolution(int axis) const;  // n per axis
  double side(int axis) const;
  double spacing(int axis) const;  // side/n
  int nodes(int axis) const;       // n on periodic axes, n+1 on intervals
  std::size_t node_count() const;

  double coord(int axis, int index) const;  // index*spacing
  // Quadrature weight of one node: product of per-axis weights, h per node
  // on periodic axes and the trapezoid rule (h/2 at the ends) on intervals.
  double quad_weight(std::size_t node) const;
  bool boundary_node(std::size_t node) const;

  std::size_t index(int i, int j = 0) const;  // row-major, j fastest

  bool operator==(const ManifoldGrid& other) const;
  bool operator!=(const ManifoldGrid& other) const { return !(*this == other); }

  // Throws UnsupportedFamilyError unless the grid is node-backed.
  void require_grid(const char* op) const;

 private:
  ManifoldGrid(Topology t, Boundary b, int nx, int ny, double lx, double ly);

  Topology topology_;
  Boundary boundary_;
  int nx_, ny_;      // resolution; ny_ = 0 for 1-D topologies
  double lx_, ly_;
};

}  // namespace fisherflow
