#pragma once

#include <array>
#include <vector>

#include "rydmix/hamiltonian.hpp"
#include "rydmix/lindblad.hpp"
#include "rydmix/system_model.hpp"

namespace rydmix::spectroscopy {

struct SpectrumPoint {
  double delta_p = 0.0;  // probe detuning [MHz]
  double value = 0.0;    // Im rho_21
};

struct SpectrumTrace {
  ModelVariant variant = ModelVariant::Effective;
  std::vector<SpectrumPoint> points;
  SystemParams meta;
};

/// How the time-dependent variants reach their quasi-stationary regime.
enum class PropagationMethod {
  /// Fixed point of the one-period propagator, then a one-period average.
  Periodic,
  /// Propagate from |1><1| for burn_in_us, then average over
  /// averaging_periods control periods.
  BurnIn,
};

struct SweepSettings {
  ModelOptions model;
  PropagationMethod method = PropagationMethod::Periodic;
  int steps_per_period = 1024;  // RK4 steps per control period 1/omega
  double burn_in_us = 2.0;
  int averaging_periods = 20;
  unsigned threads = 0;  // 0: sweep_threads()
};

/// n evenly spaced points on [lo, hi], endpoints included.
std::vector<double> linear_grid(double lo, double hi, int n);

/// 401 points on [-30, 30] MHz.
std::vector<double> default_grid();

/// Im rho_21 of one variant at the probe detuning already stored in params.
double probe_absorption(const SystemParams& params, ModelVariant variant, const SweepSettings& settings = {});

/// Im rho_21 over a sorted probe-detuning grid. Static variants use
/// steady_state; ORIGINAL and ROTATED are propagated and period averaged.
SpectrumTrace sweep_spectrum(const SystemParams& params, ModelVariant variant, const std::vector<double>& grid,
                             const SweepSettings& settings = {});

/// Which features of the trace mark the two AT components.
enum class Polarity {
  /// Local maxima of the values, e.g. two absorption peaks.
  Maxima,
  /// Local minima, i.e. the two transparency windows of an Im rho_21
  /// spectrum. Handled as the maxima of (max value - value).
  Transparency,
};

struct AtSplitting {
  double splitting = 0.0;
  std::array<double, 2> peaks{};
};

/// Finds the local maxima that exceed 10% of the global maximum, requires
/// exactly two, refines each by a three-point parabola and returns their
/// separation. Throws PeakCountError otherwise.
AtSplitting extract_at_splitting(const SpectrumTrace& trace, Polarity polarity = Polarity::Maxima);

}  // namespace rydmix::spectroscopy
