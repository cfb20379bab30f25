#include "rydmix/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rydmix/error.hpp"
#include "rydmix/golden_section.hpp"
#include "rydmix/parallel.hpp"
#include "rydmix/special_functions.hpp"

namespace rydmix::optimizer {
namespace {

constexpr const char* kModule = "optimizer";
constexpr int kGridPoints = 2001;
constexpr double kTieTolerance = 1e-12;

struct Candidate {
  double eta = -1.0;
  double omega = 0.0;
};

// Best |J_k((delta_M - k omega)/omega)| for omega in [lo, hi].
Candidate best_on_branch(int k, double delta_M, double lo, double hi) {
  auto eta = [&](double omega) { return std::abs(bessel::j(k, (delta_M - k * omega) / omega)); };

  Candidate best;
  if (hi - lo <= 0.0) {
    best = {eta(lo), lo};
    return best;
  }
  const double step = (hi - lo) / (kGridPoints - 1);
  for (int i = 0; i < kGridPoints; ++i) {
    const double omega = i == kGridPoints - 1 ? hi : lo + i * step;
    const double value = eta(omega);
    if (value > best.eta + kTieTolerance) {
      best = {value, omega};
    }
  }

  const double bracket_lo = std::max(lo, best.omega - step);
  const double bracket_hi = std::min(hi, best.omega + step);
  const double refined = golden_section_maximize(eta, bracket_lo, bracket_hi, 1e-9 * best.omega);
  const double value = eta(refined);
  if (value > best.eta + kTieTolerance) best = {value, refined};
  return best;
}

}  // namespace

void ConstraintBox::validate() const {
  if (!(a_max > 0.0)) throw DomainError(kModule, "a_max must be positive");
  if (!(omega_min > 0.0) || !(omega_min <= omega_max)) {
    throw DomainError(kModule, "omega range must satisfy 0 < omega_min <= omega_max");
  }
}

OptimizationResult optimize(double delta_M, const ConstraintBox& box) {
  box.validate();
  if (!(delta_M > 0.0)) throw InfeasibleError(kModule, "delta_M must be positive");

  OptimizationResult result;
  result.delta_M = delta_M;
  bool found = false;

  const int k_max = static_cast<int>(std::ceil(delta_M / box.omega_min));
  for (int k = 0; k <= k_max; ++k) {
    double lo = box.omega_min;
    double hi = box.omega_max;
    if (k == 0) {
      if (delta_M > box.a_max) continue;
    } else {
      lo = std::max(lo, (delta_M - box.a_max) / k);
      hi = std::min(hi, delta_M / k);
      // a = delta_M - k omega must stay strictly positive.
      if (lo > hi || lo >= delta_M / k) continue;
    }
    const Candidate c = best_on_branch(k, delta_M, lo, hi);
    if (!found || c.eta > result.eta_m + kTieTolerance) {
      found = true;
      result.eta_m = c.eta;
      result.omega_star = c.omega;
      result.a_star = delta_M - k * c.omega;
      result.k_star = k;
    }
  }

  if (!found) {
    std::ostringstream os;
    os << "no (k, omega) satisfies delta_M = a + k omega with 0 < a <= " << box.a_max << " and omega in ["
       << box.omega_min << ", " << box.omega_max << "] at delta_M = " << delta_M;
    throw InfeasibleError(kModule, os.str());
  }
  return result;
}

std::vector<MapPoint> sensitivity_map(const std::vector<double>& delta_range, const ConstraintBox& box,
                                      unsigned threads) {
  box.validate();
  std::vector<MapPoint> out(delta_range.size());
  parallel_for(
      delta_range.size(),
      [&](std::size_t i) {
        out[i].delta_M = delta_range[i];
        try {
          out[i].result = optimize(delta_range[i], box);
          out[i].feasible = true;
        } catch (const InfeasibleError& e) {
          out[i].error = e.what();
        }
      },
      threads);
  return out;
}

double sensitivity_in_field_units(const OptimizationResult& result, double resonant_baseline) {
  if (!(resonant_baseline > 0.0)) throw DomainError(kModule, "resonant baseline must be positive");
  if (!(result.eta_m > 0.0)) throw DomainError(kModule, "eta_m must be positive");
  return resonant_baseline / result.eta_m;
}

}  // namespace rydmix::optimizer
