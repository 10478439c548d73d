#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fisherflow/elliptic.hpp"
#include "fisherflow/entropy.hpp"
#include "fisherflow/field.hpp"
#include "fisherflow/flow.hpp"
#include "fisherflow/spectral.hpp"

namespace fisherflow {

// Shortest decimal that round-trips the double; "nan", "inf", "-inf" for
// non-finite values.  Identical inputs give identical bytes, which is what
// makes every CSV writer below deterministic.
std::string format_double(double v);

// Header "i,x,value" (1-D) or "i,j,x,y,value" (2-D), rows lexicographic in
// (i,j) which is the fields' storage order.
void write_field_csv(std::ostream& out, const ScalarField& f);
void write_field_csv(const std::string& path, const ScalarField& f);

// Header "t,volume,min_R,max_R,mass,N,F_perelman".  Mass is nan unless the
// trajectory carries densities; the entropy columns stay nan here and are
// filled by write_entropy_csv.
void write_trajectory_csv(std::ostream& out, const FlowTrajectory& traj);
void write_trajectory_csv(const std::string& path, const FlowTrajectory& traj);

// Trajectory table extended with the entropy module's columns:
// "t,volume,min_R,max_R,mass,N,F_perelman,fisher,meanQ,residual_1_1".
// Monotonicity rows align with interior snapshots; the end rows carry nan.
void write_entropy_csv(std::ostream& out, const FlowTrajectory& traj,
                       const std::vector<EntropyReport>& reports,
                       const std::vector<MonotonicityRow>& rows);
void write_entropy_csv(const std::string& path, const FlowTrajectory& traj,
                       const std::vector<EntropyReport>& reports,
                       const std::vector<MonotonicityRow>& rows);

// Header "iterations,residual,epsilon,coercivity,compatibility_defect".
void write_solve_report_csv(std::ostream& out, const SolveReport& report);
void write_solve_report_csv(const std::string& path, const SolveReport& report);

// Header "name,lambda1,bound,holds", one row per check.
void write_spectral_csv(std::ostream& out, const SpectralReport& report);
void write_spectral_csv(const std::string& path, const SpectralReport& report);

}  // namespace fisherflow
