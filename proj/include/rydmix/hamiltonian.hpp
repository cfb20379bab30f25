#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string_view>

#include <Eigen/Core>

#include "rydmix/system_model.hpp"

namespace rydmix {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;

/// Hamiltonian H / (2 pi hbar) in MHz numerals; the matrix that enters
/// i d(rho)/dt = 2 pi [H, rho]. Levels |1>..|4> map to indices 0..3.
using HamiltonianMatrix = Matrix4c;

enum class ModelVariant { Original, Rotated, Effective, EffectiveNo2nd };

std::string_view to_string(ModelVariant variant);

/// A time-dependent Hamiltonian together with what the integrators need to
/// know about it.
struct TimeDependentHamiltonian {
  std::function<HamiltonianMatrix(double)> at;  // t in microseconds
  double max_frequency = 0.0;  // largest frequency present [MHz], sets the step bound
  double period = 0.0;         // exact period [us], or 0 if not periodic
};

namespace hamiltonian {

/// Four-level ladder Hamiltonian in the interaction picture after the RWA,
/// including the AC-Stark control term A(1 + cos w t)|3><3| + A'(1 + cos w t)|4><4|.
/// omega_M_value is the instantaneous complex MW Rabi frequency.
HamiltonianMatrix build_original(const SystemParams& params, double t, Complex omega_M_value);

/// The same dynamics after removing the control term with
/// U(t) = exp(-i int_0^t H_C), expanded in Bessel sidebands |n|, |m| <= n_max.
/// Uses Omega_M = Omega_L + Omega_s.
HamiltonianMatrix build_rotated(const SystemParams& params, double t, int n_max);

struct EffectiveModel {
  HamiltonianMatrix h;
  EffectiveDetunings detunings;
  double effective_mw_rabi = 0.0;  // J_k(a/omega) Omega_M
};

/// Time-independent effective Hamiltonian for sideband k:
///   -[[0, Op/2, 0, 0],
///     [Op/2, Dp, J0(A/w) Oc/2, 0],
///     [0, J0(A/w) Oc/2, Dp + dc, Jk(a/w) OM/2],
///     [0, 0, Jk(a/w) OM/2, Dp + dc + DMeff]]
/// With include_second_order false, delta_M is dropped from dc and DMeff.
/// omega_M_magnitude overrides the Rabi entry (heterodyne samples); when
/// negative the static Omega_L + Omega_s is used. delta_M itself always uses
/// the static magnitude.
EffectiveModel build_effective(const SystemParams& params, const ModelOptions& options,
                               bool include_second_order, double omega_M_magnitude = -1.0);

/// Per-level frame frequencies (MHz) of a diagonal rotation W = diag(e^{2 pi i phi_j t}).
using FramePhases = std::array<double, 4>;

/// W^dagger H W + diag(phi): the Hamiltonian seen in the rotating frame.
HamiltonianMatrix to_rotating_frame(const HamiltonianMatrix& h, double t, const FramePhases& phases);

/// Frame in which the probe, coupling and MW carriers of build_original are static:
/// phi = (0, -Dp, -(Dp + Dc), -(Dp + Dc + DM)). rho_21 in this frame is the
/// demodulated probe coherence.
FramePhases laser_frame(const SystemParams& params);

/// Frame in which the n = 0 coupling sideband and the k-th MW sideband of
/// build_rotated are static. Shares levels 1 and 2 with laser_frame.
FramePhases sideband_frame(const SystemParams& params, int k);

/// Original model in the laser frame: periodic with 1/omega.
TimeDependentHamiltonian original_dynamics(const SystemParams& params);

/// Rotated sideband model in sideband_frame: periodic with 1/omega.
TimeDependentHamiltonian rotated_dynamics(const SystemParams& params, const ModelOptions& options);

/// Wraps a static matrix.
TimeDependentHamiltonian constant(const HamiltonianMatrix& h);

/// Largest |eigenvalue| of a Hermitian matrix, used as the frequency scale
/// of static models.
double spectral_radius(const HamiltonianMatrix& h);

}  // namespace hamiltonian
}  // namespace rydmix
