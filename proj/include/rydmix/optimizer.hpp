#pragma once

#include <string>
#include <vector>

namespace rydmix::optimizer {

/// Feasible RF parameters: 0 < a <= a_max and omega_min <= omega <= omega_max [MHz].
struct ConstraintBox {
  double a_max = 500.0;
  double omega_min = 100.0;
  double omega_max = 500.0;

  /// Throws DomainError unless 0 < omega_min <= omega_max and a_max > 0.
  void validate() const;
};

struct OptimizationResult {
  double delta_M = 0.0;
  double eta_m = 0.0;  // |J_k(a/omega)|
  double a_star = 0.0;
  double omega_star = 0.0;
  int k_star = 0;
};

/// Maximizes |J_k(a/omega)| subject to delta_M = a + k omega (second-order
/// shift neglected), k >= 0 and the box. Each k branch is scanned on a
/// 2001-point omega grid and refined by golden section to 1e-9 relative.
/// Ties go to the smaller k, then the smaller omega. Throws InfeasibleError
/// when no branch is feasible.
OptimizationResult optimize(double delta_M, const ConstraintBox& box);

struct MapPoint {
  double delta_M = 0.0;
  bool feasible = false;
  OptimizationResult result;  // valid when feasible
  std::string error;          // diagnostic when not
};

/// optimize at every detuning; infeasible points are recorded, not thrown.
std::vector<MapPoint> sensitivity_map(const std::vector<double>& delta_range, const ConstraintBox& box,
                                      unsigned threads = 0);

/// baseline / eta_m, e.g. in nV cm^-1 Hz^-1/2.
double sensitivity_in_field_units(const OptimizationResult& result, double resonant_baseline);

}  // namespace rydmix::optimizer
