#pragma once

#include <string>
#include <vector>

#include "rydmix/system_model.hpp"

namespace rydmix::validation {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// max |rho_original(t_end) - U rho_rotated(t_end) U^dagger| for closed-system
/// propagation from the uniform superposition, where U = exp(-i 2 pi int H_C)
/// removes the control term. Both models are integrated in the lab picture
/// with the same RK4 step.
double propagator_equivalence_error(const SystemParams& params, const ModelOptions& options, double t_end);

/// Largest trace and Hermiticity drift of an open-system trajectory of the
/// original model, starting in |1><1| and lasting t_end microseconds.
struct Drift {
  double trace = 0.0;
  double hermiticity = 0.0;
};
Drift propagation_drift(const SystemParams& params, double t_end);

/// Fast invariant checks used by `rydmix validate`.
std::vector<Check> invariant_suite();

}  // namespace rydmix::validation
