#pragma once

#include <string>
#include <vector>

#include "rydmix/hamiltonian.hpp"
#include "rydmix/system_model.hpp"

namespace rydmix::heterodyne {

struct HeterodyneTrace {
  ModelVariant variant = ModelVariant::Effective;
  std::vector<double> t;        // us
  std::vector<double> delta_T;  // kappa (Im rho_21(t) - Im rho_21 at Omega_s = 0)
  double kappa = 1.0;
  double beat_period = 0.0;     // 1 / delta_f [us]
  std::vector<std::string> warnings;
};

struct HeterodyneSettings {
  ModelOptions model;
  int samples_per_period = 256;
  int periods = 2;
  double kappa = 1.0;
  unsigned threads = 0;
};

/// Quasi-static heterodyne signal: at every sample the effective model is
/// rebuilt with the instantaneous magnitude |Omega_L + Omega_s e^{i 2 pi delta_f t}|
/// and solved for its steady state at delta_p_probe. The second-order shift is
/// evaluated once from Omega_L + Omega_s and kept for the whole trace.
/// variant must be EFFECTIVE or EFFECTIVE_NO_2ND. Adds a warning when
/// delta_f > gamma_2 / 100.
HeterodyneTrace synthesize(const SystemParams& params, ModelVariant variant, double delta_p_probe,
                           const HeterodyneSettings& settings = {});

/// (max - min) / 2 of delta_T over the first beat period. Throws WindowError
/// if the trace is shorter than one period.
double amplitude(const HeterodyneTrace& trace);

/// d(Im rho_21)/d(Omega_M) of the effective model at Omega_M = Omega_L, by a
/// central difference of step h.
double rabi_slope(const SystemParams& params, const ModelOptions& options, bool include_second_order,
                  double delta_p, double h = 1e-3);

/// Probe detuning of steepest |rabi_slope| (EFFECTIVE model with Omega_s = 0)
/// on an n-point scan of [lo, hi]. The first maximum wins.
double default_operating_point(const SystemParams& params, const ModelOptions& options = {}, double lo = -30.0,
                               double hi = 30.0, int n = 601);

}  // namespace rydmix::heterodyne
