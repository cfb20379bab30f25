#include "rydmix/spectroscopy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "rydmix/error.hpp"
#include "rydmix/parallel.hpp"

namespace rydmix::spectroscopy {
namespace {

constexpr const char* kModule = "spectroscopy";

// rho_21 = tr(rho |1><2|) in zero-based indices.
const Matrix4c& probe_coherence() {
  static const Matrix4c o = lindblad::transition_operator(0, 1);
  return o;
}

double propagated_absorption(const TimeDependentHamiltonian& dynamics, const DecayRates& rates,
                             const SweepSettings& settings) {
  const double period = dynamics.period;
  const double dt = period / settings.steps_per_period;
  if (settings.method == PropagationMethod::Periodic) {
    const auto rho0 = lindblad::periodic_steady_state(dynamics, rates, settings.steps_per_period);
    const auto traj = lindblad::propagate(dynamics, rates, rho0.matrix(), period, dt);
    return lindblad::time_averaged_observable(traj, probe_coherence(), 0.0, period).imag();
  }

  // Burn-in without recording, then a recorded averaging window that starts
  // on a period boundary.
  const double burn_in = std::ceil(settings.burn_in_us / period) * period;
  const auto warm = lindblad::propagate(dynamics, rates, lindblad::DensityMatrix::pure(0).matrix(), burn_in, dt,
                                        std::numeric_limits<int>::max());
  const double window = settings.averaging_periods * period;
  const auto traj = lindblad::propagate(dynamics, rates, warm.states.back(), burn_in + window, dt, 1, burn_in);
  return lindblad::time_averaged_observable(traj, probe_coherence(), burn_in, period).imag();
}

}  // namespace

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (n < 2) throw DomainError(kModule, "a grid needs at least two points");
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return grid;
}

std::vector<double> default_grid() { return linear_grid(-30.0, 30.0, 401); }

double probe_absorption(const SystemParams& params, ModelVariant variant, const SweepSettings& settings) {
  switch (variant) {
    case ModelVariant::Effective:
    case ModelVariant::EffectiveNo2nd: {
      const bool second_order = variant == ModelVariant::Effective;
      const auto model = hamiltonian::build_effective(params, settings.model, second_order);
      return lindblad::steady_state(model.h, params.decay).matrix()(1, 0).imag();
    }
    case ModelVariant::Original:
      return propagated_absorption(hamiltonian::original_dynamics(params), params.decay, settings);
    case ModelVariant::Rotated:
      return propagated_absorption(hamiltonian::rotated_dynamics(params, settings.model), params.decay, settings);
  }
  throw DomainError(kModule, "unknown model variant");
}

SpectrumTrace sweep_spectrum(const SystemParams& params, ModelVariant variant, const std::vector<double>& grid,
                             const SweepSettings& settings) {
  if (grid.size() < 3) throw DomainError(kModule, "a spectrum needs at least three grid points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError(kModule, "probe detuning grid must be strictly increasing");
  }

  SpectrumTrace trace;
  trace.variant = variant;
  trace.meta = params;
  trace.points.resize(grid.size());
  parallel_for(
      grid.size(),
      [&](std::size_t i) {
        SystemParams p = params;
        p.delta_p = grid[i];
        trace.points[i] = {grid[i], probe_absorption(p, variant, settings)};
      },
      settings.threads);
  return trace;
}

AtSplitting extract_at_splitting(const SpectrumTrace& trace, Polarity polarity) {
  const auto& pts = trace.points;
  if (pts.size() < 3) throw PeakCountError(kModule, "trace has fewer than three points", 0);

  std::vector<double> v(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) v[i] = pts[i].value;
  if (polarity == Polarity::Transparency) {
    const double top = *std::max_element(v.begin(), v.end());
    for (double& x : v) x = top - x;
  }
  const double global = *std::max_element(v.begin(), v.end());

  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] > v[i - 1] && v[i] >= v[i + 1] && v[i] > 0.1 * global) peaks.push_back(i);
  }
  if (peaks.size() != 2) {
    std::ostringstream os;
    os << "expected two qualifying peaks, found " << peaks.size();
    throw PeakCountError(kModule, os.str(), static_cast<int>(peaks.size()));
  }

  AtSplitting out;
  for (std::size_t n = 0; n < 2; ++n) {
    const std::size_t i = peaks[n];
    const double x0 = pts[i - 1].delta_p, x1 = pts[i].delta_p, x2 = pts[i + 1].delta_p;
    const double y0 = v[i - 1], y1 = v[i], y2 = v[i + 1];
    // Vertex of the parabola through the three samples.
    const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
    const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    out.peaks[n] = den != 0.0 ? x1 - 0.5 * num / den : x1;
  }
  out.splitting = out.peaks[1] - out.peaks[0];
  return out;
}

}  // namespace rydmix::spectroscopy
