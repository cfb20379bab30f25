#include "rydmix/heterodyne.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rydmix/error.hpp"
#include "rydmix/lindblad.hpp"
#include "rydmix/parallel.hpp"

namespace rydmix::heterodyne {
namespace {

constexpr const char* kModule = "heterodyne";

double absorption(const SystemParams& params, const ModelOptions& options, bool second_order, double omega_M) {
  const auto model = hamiltonian::build_effective(params, options, second_order, omega_M);
  return lindblad::steady_state(model.h, params.decay).matrix()(1, 0).imag();
}

}  // namespace

HeterodyneTrace synthesize(const SystemParams& params, ModelVariant variant, double delta_p_probe,
                           const HeterodyneSettings& settings) {
  if (variant != ModelVariant::Effective && variant != ModelVariant::EffectiveNo2nd) {
    throw DomainError(kModule, "heterodyne synthesis supports EFFECTIVE and EFFECTIVE_NO_2ND only");
  }
  if (settings.samples_per_period < 64) throw DomainError(kModule, "samples_per_period must be at least 64");
  if (settings.periods < 2) throw DomainError(kModule, "the trace must span at least two beat periods");
  if (!(params.delta_f > 0.0)) throw DomainError(kModule, "beat frequency delta_f must be positive");

  HeterodyneTrace trace;
  trace.variant = variant;
  trace.kappa = settings.kappa;
  trace.beat_period = 1.0 / params.delta_f;
  if (params.delta_f > params.decay.gamma[1] / 100.0) {
    std::ostringstream os;
    os << "delta_f = " << params.delta_f << " MHz exceeds gamma_2/100; the quasi-static signal may be inaccurate";
    trace.warnings.push_back(os.str());
  }

  SystemParams p = params;
  p.delta_p = delta_p_probe;
  const bool second_order = variant == ModelVariant::Effective;
  const double baseline = absorption(p, settings.model, second_order, params.omega_L);

  const int count = settings.samples_per_period * settings.periods + 1;
  trace.t.resize(static_cast<std::size_t>(count));
  trace.delta_T.resize(static_cast<std::size_t>(count));
  const double step = trace.beat_period / settings.samples_per_period;
  const double l = params.omega_L;
  const double s = params.omega_s;
  parallel_for(
      static_cast<std::size_t>(count),
      [&](std::size_t j) {
        const double t = static_cast<double>(j) * step;
        const double c = std::cos(2.0 * std::numbers::pi * params.delta_f * t);
        const double omega_M = std::sqrt(std::max(0.0, l * l + s * s + 2.0 * l * s * c));
        trace.t[j] = t;
        trace.delta_T[j] = settings.kappa * (absorption(p, settings.model, second_order, omega_M) - baseline);
      },
      settings.threads);
  return trace;
}

double amplitude(const HeterodyneTrace& trace) {
  if (trace.t.size() < 2 || !(trace.beat_period > 0.0)) {
    throw WindowError(kModule, "trace has no beat period to analyse");
  }
  const double t0 = trace.t.front();
  const double end = t0 + trace.beat_period;
  if (trace.t.back() < end * (1.0 - 1e-12)) {
    throw WindowError(kModule, "trace spans less than one beat period");
  }
  double lo = trace.delta_T.front();
  double hi = lo;
  for (std::size_t i = 0; i < trace.t.size() && trace.t[i] <= end * (1.0 + 1e-12); ++i) {
    lo = std::min(lo, trace.delta_T[i]);
    hi = std::max(hi, trace.delta_T[i]);
  }
  return 0.5 * (hi - lo);
}

double rabi_slope(const SystemParams& params, const ModelOptions& options, bool include_second_order,
                  double delta_p, double h) {
  SystemParams p = params;
  p.delta_p = delta_p;
  const double up = absorption(p, options, include_second_order, params.omega_L + h);
  const double down = absorption(p, options, include_second_order, params.omega_L - h);
  return (up - down) / (2.0 * h);
}

double default_operating_point(const SystemParams& params, const ModelOptions& options, double lo, double hi,
                               int n) {
  if (n < 2) throw DomainError(kModule, "operating-point scan needs at least two points");
  // The scan sees the local field alone, including in the second-order shift.
  SystemParams local = params;
  local.omega_s = 0.0;
  double best = lo;
  double best_slope = -1.0;
  for (int i = 0; i < n; ++i) {
    const double dp = lo + (hi - lo) * i / (n - 1);
    const double slope = std::abs(rabi_slope(local, options, true, dp));
    // Mirror-image points tie up to rounding; keep the first.
    if (slope > best_slope * (1.0 + 1e-9)) {
      best_slope = slope;
      best = dp;
    }
  }
  return best;
}

}  // namespace rydmix::heterodyne
