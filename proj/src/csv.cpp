#include "fisherflow/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "fisherflow/errors.hpp"
#include "fisherflow/geometry.hpp"

namespace fisherflow {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw StateError("cannot open output file: " + path);
  return out;
}

void trajectory_rows(std::ostream& out, const FlowTrajectory& traj,
                     const std::vector<EntropyReport>* reports,
                     const std::vector<MonotonicityRow>* rows) {
  const std::size_t n = traj.size();
  for (std::size_t k = 0; k < n; ++k) {
    const ScalarField curv = scalar_curvature(traj.metrics[k]);
    double mass = kNan;
    double nash = kNan;
    double perelman = kNan;
    if (reports) {
      mass = (*reports)[k].mass;
      nash = (*reports)[k].nash;
      perelman = (*reports)[k].perelman;
    } else if (traj.has_densities()) {
      mass = density_mass(traj.densities[k], traj.metrics[k]);
    }
    out << format_double(traj.times[k]) << ','
        << format_double(traj.volumes[k]) << ',' << format_double(curv.min())
        << ',' << format_double(curv.max()) << ',' << format_double(mass)
        << ',' << format_double(nash) << ',' << format_double(perelman);
    if (reports) {
      out << ',' << format_double((*reports)[k].fisher) << ','
          << format_double((*reports)[k].mean_q) << ',';
      const bool interior = k >= 1 && k + 1 < n && rows &&
                            k - 1 < rows->size();
      out << format_double(interior ? (*rows)[k - 1].residual : kNan);
    }
    out << '\n';
  }
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_field_csv(std::ostream& out, const ScalarField& f) {
  const ManifoldGrid& grid = f.grid;
  grid.require_grid("write_field_csv");
  if (grid.axes() == 1) {
    out << "i,x,value\n";
    for (int i = 0; i < grid.nodes(0); ++i)
      out << i << ',' << format_double(grid.coord(0, i)) << ','
          << format_double(f.at(i)) << '\n';
    return;
  }
  out << "i,j,x,y,value\n";
  for (int i = 0; i < grid.nodes(0); ++i)
    for (int j = 0; j < grid.nodes(1); ++j)
      out << i << ',' << j << ',' << format_double(grid.coord(0, i)) << ','
          << format_double(grid.coord(1, j)) << ',' << format_double(f.at(i, j))
          << '\n';
}

void write_field_csv(const std::string& path, const ScalarField& f) {
  std::ofstream out = open_or_throw(path);
  write_field_csv(out, f);
}

void write_trajectory_csv(std::ostream& out, const FlowTrajectory& traj) {
  out << "t,volume,min_R,max_R,mass,N,F_perelman\n";
  trajectory_rows(out, traj, nullptr, nullptr);
}

void write_trajectory_csv(const std::string& path,
                          const FlowTrajectory& traj) {
  std::ofstream out = open_or_throw(path);
  write_trajectory_csv(out, traj);
}

void write_entropy_csv(std::ostream& out, const FlowTrajectory& traj,
                       const std::vector<EntropyReport>& reports,
                       const std::vector<MonotonicityRow>& rows) {
  if (reports.size() != traj.size())
    throw ShapeError("entropy report count does not match trajectory");
  if (!rows.empty() && rows.size() + 2 != traj.size())
    throw ShapeError("monotonicity row count does not match trajectory");
  out << "t,volume,min_R,max_R,mass,N,F_perelman,fisher,meanQ,residual_1_1\n";
  trajectory_rows(out, traj, &reports, &rows);
}

void write_entropy_csv(const std::string& path, const FlowTrajectory& traj,
                       const std::vector<EntropyReport>& reports,
                       const std::vector<MonotonicityRow>& rows) {
  std::ofstream out = open_or_throw(path);
  write_entropy_csv(out, traj, reports, rows);
}

void write_solve_report_csv(std::ostream& out, const SolveReport& report) {
  out << "iterations,residual,epsilon,coercivity,compatibility_defect\n"
      << report.iterations << ',' << format_double(report.residual) << ','
      << format_double(report.epsilon) << ','
      << format_double(report.coercivity) << ','
      << format_double(report.compatibility_defect) << '\n';
}

void write_solve_report_csv(const std::string& path,
                            const SolveReport& report) {
  std::ofstream out = open_or_throw(path);
  write_solve_report_csv(out, report);
}

void write_spectral_csv(std::ostream& out, const SpectralReport& report) {
  out << "name,lambda1,bound,holds\n";
  for (const BoundCheck& check : report.checks)
    out << check.name << ',' << format_double(report.lambda1) << ','
        << format_double(check.bound_value) << ',' << to_string(check.status)
        << '\n';
}

void write_spectral_csv(const std::string& path, const SpectralReport& report) {
  std::ofstream out = open_or_throw(path);
  write_spectral_csv(out, report);
}

}  // namespace fisherflow
