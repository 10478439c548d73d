#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fisherflow {

// Base class for all toolkit failures so callers can catch one type.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Field/grid shape disagreement (wrong node count, mismatched grids).
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Operation asked of a metric family that does not support it
// (e.g. grid quadrature on the analytic sphere family).
class UnsupportedFamilyError : public Error {
 public:
  using Error::Error;
};

// A quantity that must be strictly positive is not.
class PositivityError : public Error {
 public:
  using Error::Error;
};

// Explicit step size exceeds the parabolic stability bound.
class CflError : public Error {
 public:
  using Error::Error;
};

// Sphere-family scale would reach zero within the step.
class ExtinctionError : public Error {
 public:
  ExtinctionError(const std::string& what, double t_extinction)
      : Error(what), extinction_time(t_extinction) {}
  double extinction_time;
};

// 3x3 input matrix is numerically singular.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// API used out of order or with an unusable trajectory/system state.
class StateError : public Error {
 public:
  using Error::Error;
};

// Iterative solver failed to reach tolerance; carries the residual history.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> history)
      : Error(what), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

// Closed-grid right-hand side has a nonzero mean component.
class CompatibilityError : public Error {
 public:
  using Error::Error;
};

// kappa = 0 on a closed grid with no gauge: constants are in the kernel.
class UnderdeterminedError : public Error {
 public:
  using Error::Error;
};

// Conserved quantity drifted beyond its tolerance.
class ConservationError : public Error {
 public:
  using Error::Error;
};

// Bad run configuration (unknown key, malformed value).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fisherflow
