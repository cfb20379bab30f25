#include "rydmix/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "rydmix/special_functions.hpp"

namespace rydmix {

std::string_view to_string(ModelVariant variant) {
  switch (variant) {
    case ModelVariant::Original: return "ORIGINAL";
    case ModelVariant::Rotated: return "ROTATED";
    case ModelVariant::Effective: return "EFFECTIVE";
    case ModelVariant::EffectiveNo2nd: return "EFFECTIVE_NO_2ND";
  }
  return "UNKNOWN";
}

namespace hamiltonian {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex phase(double frequency, double t) { return std::polar(1.0, kTwoPi * frequency * t); }

void set_coupling(HamiltonianMatrix& h, int i, int j, Complex value) {
  h(i, j) = value;
  h(j, i) = std::conj(value);
}

// Highest sideband index whose Bessel weight is not negligible.
int significant_sidebands(double z, int n_max) {
  int top = 0;
  for (int n = 0; n <= n_max; ++n) {
    if (std::abs(bessel::j(n, z)) > 1e-16) top = n;
  }
  return top;
}

}  // namespace

HamiltonianMatrix build_original(const SystemParams& params, double t, Complex omega_M_value) {
  HamiltonianMatrix h = HamiltonianMatrix::Zero();
  set_coupling(h, 0, 1, -0.5 * params.omega_p_rabi * phase(params.delta_p, t));
  set_coupling(h, 1, 2, -0.5 * params.omega_c_rabi * phase(params.delta_c, t));
  set_coupling(h, 2, 3, -0.5 * omega_M_value * phase(params.delta_M, t));
  const double modulation = 1.0 + std::cos(kTwoPi * params.omega * t);
  h(2, 2) = params.A * modulation;
  h(3, 3) = params.A_prime * modulation;
  return h;
}

namespace {

struct SidebandWeights {
  std::vector<double> coupling;   // J_n(A / omega), n = -n_max..n_max
  std::vector<double> microwave;  // J_m(a / omega)
};

SidebandWeights sideband_weights(const SystemParams& params, int n_max) {
  SidebandWeights w;
  for (int n = -n_max; n <= n_max; ++n) {
    w.coupling.push_back(bessel::j(n, params.A / params.omega));
    w.microwave.push_back(bessel::j(n, params.a() / params.omega));
  }
  return w;
}

HamiltonianMatrix rotated_with(const SystemParams& params, const SidebandWeights& w, double t) {
  const int n_max = static_cast<int>(w.coupling.size() / 2);
  const double a = params.a();
  Complex coupling = 0.0;
  Complex microwave = 0.0;
  for (int n = -n_max; n <= n_max; ++n) {
    const auto idx = static_cast<std::size_t>(n + n_max);
    coupling += w.coupling[idx] * phase(params.delta_c - params.A - n * params.omega, t);
    microwave += w.microwave[idx] * phase(params.delta_M - a - n * params.omega, t);
  }

  HamiltonianMatrix h = HamiltonianMatrix::Zero();
  set_coupling(h, 0, 1, -0.5 * params.omega_p_rabi * phase(params.delta_p, t));
  set_coupling(h, 1, 2, -0.5 * params.omega_c_rabi * coupling);
  set_coupling(h, 2, 3, -0.5 * params.omega_M_static() * microwave);
  return h;
}

}  // namespace

HamiltonianMatrix build_rotated(const SystemParams& params, double t, int n_max) {
  return rotated_with(params, sideband_weights(params, n_max), t);
}

EffectiveModel build_effective(const SystemParams& params, const ModelOptions& options,
                               bool include_second_order, double omega_M_magnitude) {
  EffectiveModel model;
  model.detunings = effective_detunings(params, options, include_second_order);
  const double omega_M = omega_M_magnitude < 0.0 ? params.omega_M_static() : omega_M_magnitude;
  const double coupling = bessel::j(0, params.A / params.omega) * params.omega_c_rabi;
  model.effective_mw_rabi = bessel::j(options.k, model.detunings.a / params.omega) * omega_M;

  const double dp = params.delta_p;
  const double d3 = dp + model.detunings.delta_c_eff;
  const double d4 = d3 + model.detunings.delta_M_eff;

  HamiltonianMatrix& h = model.h;
  h.setZero();
  set_coupling(h, 0, 1, -0.5 * params.omega_p_rabi);
  set_coupling(h, 1, 2, -0.5 * coupling);
  set_coupling(h, 2, 3, -0.5 * model.effective_mw_rabi);
  h(1, 1) = -dp;
  h(2, 2) = -d3;
  h(3, 3) = -d4;
  return model;
}

HamiltonianMatrix to_rotating_frame(const HamiltonianMatrix& h, double t, const FramePhases& phases) {
  std::array<Complex, 4> w;
  for (int j = 0; j < 4; ++j) w[j] = phase(phases[j], t);
  HamiltonianMatrix out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out(i, j) = std::conj(w[i]) * h(i, j) * w[j];
    out(i, i) += phases[i];
  }
  return out;
}

FramePhases laser_frame(const SystemParams& params) {
  const double p = params.delta_p;
  return {0.0, -p, -(p + params.delta_c), -(p + params.delta_c + params.delta_M)};
}

FramePhases sideband_frame(const SystemParams& params, int k) {
  const double p = params.delta_p;
  const double coupling = params.delta_c - params.A;
  const double microwave = params.delta_M - params.a() - k * params.omega;
  return {0.0, -p, -(p + coupling), -(p + coupling + microwave)};
}

TimeDependentHamiltonian original_dynamics(const SystemParams& params) {
  const FramePhases frame = laser_frame(params);
  TimeDependentHamiltonian out;
  out.at = [params, frame](double t) {
    return to_rotating_frame(build_original(params, t, params.omega_M_static()), t, frame);
  };
  const double stark = 2.0 * std::max(std::abs(params.A), std::abs(params.A_prime));
  out.max_frequency = std::max(
      std::abs(params.delta_p) + std::abs(params.delta_c) + std::abs(params.delta_M) + stark, params.omega);
  out.period = 1.0 / params.omega;
  return out;
}

TimeDependentHamiltonian rotated_dynamics(const SystemParams& params, const ModelOptions& options) {
  const FramePhases frame = sideband_frame(params, options.k);
  const int n_max = options.n_max;
  auto weights = sideband_weights(params, n_max);
  TimeDependentHamiltonian out;
  out.at = [params, frame, weights = std::move(weights)](double t) {
    return to_rotating_frame(rotated_with(params, weights, t), t, frame);
  };
  const int reach = std::max(significant_sidebands(params.A / params.omega, n_max),
                             significant_sidebands(params.a() / params.omega, n_max) + std::abs(options.k));
  out.max_frequency = std::abs(params.delta_p) + std::abs(params.delta_c - params.A) +
                      std::abs(params.delta_M - params.a() - options.k * params.omega) +
                      std::max(reach, 1) * params.omega;
  out.period = 1.0 / params.omega;
  return out;
}

TimeDependentHamiltonian constant(const HamiltonianMatrix& h) {
  TimeDependentHamiltonian out;
  out.at = [h](double) { return h; };
  out.max_frequency = spectral_radius(h);
  return out;
}

double spectral_radius(const HamiltonianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace hamiltonian
}  // namespace rydmix
