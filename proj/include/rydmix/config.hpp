#pragma once

#include <optional>
#include <string>

#include "rydmix/optimizer.hpp"
#include "rydmix/spectroscopy.hpp"
#include "rydmix/system_model.hpp"

namespace rydmix {

/// Everything one CLI invocation needs. Defaults reproduce the second-order
/// validation figure (k = 1 sideband at a/omega = 0.5, Delta_M = 600 MHz).
struct RunConfig {
  std::string command;
  std::string output_path;  // empty: stdout

  SystemParams params;
  spectroscopy::SweepSettings sweep;

  // rf.tune solves the resonance for rf.a_over_omega and overwrites omega,
  // A' and Delta_c. Without it, rf.a_over_omega only sets A' = A + ratio * omega.
  bool rf_tune = false;
  std::optional<double> a_over_omega;

  double spectrum_min = -30.0;
  double spectrum_max = 30.0;
  int spectrum_points = 401;

  int heterodyne_samples = 256;
  int heterodyne_periods = 2;
  double heterodyne_kappa = 1.0;
  std::optional<double> heterodyne_delta_p;  // default: steepest-slope point

  optimizer::ConstraintBox box;
  double map_min = 100.0;
  double map_max = 2000.0;
  double map_step = 10.0;
  double optimize_delta_M = 700.0;
  double sensitivity_baseline = 20.0;  // nV cm^-1 Hz^-1/2 at resonance

  double bound_min = 0.01;
  double bound_max = 8.0;
  int bound_points = 800;
  int bound_k = 1;
};

/// Parses `dotted.key = value` lines; '#' starts a comment. Unknown keys,
/// malformed values and a file without any setting raise ConfigError naming
/// the line. rf.tune / rf.a_over_omega are applied after all lines are read.
RunConfig parse_config(const std::string& text, RunConfig base = {});

/// Reads and parses a file. Throws ConfigError if it cannot be read.
RunConfig load_config(const std::string& path, RunConfig base = {});

}  // namespace rydmix
