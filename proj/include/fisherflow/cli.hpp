#pragma once

#include <iosfwd>
#include <string>

namespace fisherflow {

// Flat "key = value" run configuration.  Unknown and duplicate keys are
// rejected with the offending line number; '#' starts a comment.
struct RunConfig {
  std::string command;  // flow, entropy, phase, spectral, check

  // Geometry family.
  std::string family = "torus";  // sphere, torus, circle, interval
  int n = 64;                    // nodes per axis (torus is n x n)
  double length = 1.0;           // side L
  int dim = 2;                   // sphere dimension
  double c0 = 1.0;               // initial sphere scale

  // Initial log-conformal factor phi0 = amplitude sin(2 pi mode x / L);
  // mode = 0 means the constant field phi0 = amplitude.
  double phi0_amplitude = 0.0;
  int phi0_mode = 1;

  // Terminal conjugate-heat density u ~ 1 + amplitude cos(2 pi mode x / L).
  double u0_amplitude = 0.0;
  int u0_mode = 1;

  // Flow stepping.
  double dt = 1e-4;
  double t_end = 0.0;
  int snapshot_every = 1;
  double safety = 1.0;
  bool conjugate_heat = false;

  // Elliptic data: P = 1 + p_amplitude sin(2 pi p_mode x / L),
  // R = r_amplitude cos(2 pi r_mode x / L).
  double p_amplitude = 0.5;
  int p_mode = 1;
  double r_amplitude = 1.0;
  int r_mode = 1;
  double kappa = 0.0;
  double mass_param = 1.0;
  double hbar = 1.0;
  double tol = 1e-10;
  int max_iter = 10000;
  std::string gauge = "none";  // none, zero_mean

  // Output.
  std::string out_dir = ".";
  bool write_fields = false;
};

// Parses the config text for the given command; throws ConfigError with the
// line number and key on any problem.
RunConfig parse_config(const std::string& command, std::istream& text);
RunConfig parse_config_file(const std::string& command,
                            const std::string& path);

// Executes one command; returns the process exit status (0 success,
// 1 numeric/invariant failure).  Throws ConfigError for bad configuration
// (mapped to exit 2 by cli_main) and module errors for numeric failures
// (mapped to exit 1).
int run(const RunConfig& cfg);

// Full argv entry point: usage/config errors exit 2, numeric errors exit 1.
int cli_main(int argc, const char* const* argv);

}  // namespace fisherflow
