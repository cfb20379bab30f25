#pragma once

#include <limits>
#include <vector>

#include <Eigen/Core>

#include "rydmix/hamiltonian.hpp"
#include "rydmix/system_model.hpp"

namespace rydmix::lindblad {

using Liouvillian = Eigen::Matrix<Complex, 16, 16>;
using Vector16c = Eigen::Matrix<Complex, 16, 1>;

/// Row-major vectorization index of rho_ij (zero-based).
constexpr int vec_index(int i, int j) { return 4 * i + j; }

struct Diagnostics {
  double hermiticity_error = 0.0;  // max |rho - rho^dagger|
  double trace_error = 0.0;        // |tr rho - 1|
  double min_eigenvalue = 0.0;     // of the Hermitian part
};

/// Four-level density matrix. Construction does not enforce the physical
/// invariants; diagnostics() reports how well they hold.
class DensityMatrix {
public:
  DensityMatrix() : rho_(Matrix4c::Zero()) {}
  explicit DensityMatrix(const Matrix4c& rho) : rho_(rho) {}

  /// |level><level|, zero-based.
  static DensityMatrix pure(int level);

  const Matrix4c& matrix() const { return rho_; }
  Complex operator()(int i, int j) const { return rho_(i, j); }

  Diagnostics diagnostics() const;

private:
  Matrix4c rho_;
};

/// The cascade dissipator with rates in MHz numerals (no 2 pi):
///   diagonal (g2 r22, g3 r33 - g2 r22, g4 r44 - g3 r33, -g4 r44),
///   off-diagonal -g_ij r_ij with g_ij = (g_i + g_j) / 2.
Matrix4c dissipator(const Matrix4c& rho, const DecayRates& rates);

/// -i[H, rho] + D(rho) in MHz numerals. The physical rate per microsecond is
/// 2 pi times this.
Matrix4c generator(const HamiltonianMatrix& h, const Matrix4c& rho, const DecayRates& rates);

/// d(rho)/dt per microsecond: 2 pi (-i[H, rho] + D(rho)).
Matrix4c master_rhs(const HamiltonianMatrix& h, const Matrix4c& rho, const DecayRates& rates);

/// Matrix of master_rhs acting on the row-major vectorized rho.
Liouvillian liouvillian(const HamiltonianMatrix& h, const DecayRates& rates);

/// Steady state of a time-independent model: the first row of the Liouvillian
/// is replaced by the trace constraint and the 16x16 system is solved. Throws
/// DegenerateNullSpaceError if the Liouvillian has numerical rank below 15.
DensityMatrix steady_state(const HamiltonianMatrix& h, const DecayRates& rates);

/// max |-i[H, rho] + D(rho)| in MHz numerals.
double steady_state_residual(const HamiltonianMatrix& h, const DensityMatrix& rho, const DecayRates& rates);

struct Trajectory {
  std::vector<double> times;
  std::vector<Matrix4c> states;
};

/// Largest step accepted for a model: 1 / (50 nu_max) with nu_max the
/// larger of the Hamiltonian's declared frequency and the fastest decay rate.
double max_step(const TimeDependentHamiltonian& h, const DecayRates& rates);

/// Classical fixed-step RK4 integration of the master equation from t0 to
/// t_end. The step is shrunk so an integer number of steps lands on t_end.
/// States are recorded at t0, every `record_every` steps and at t_end.
/// Throws StepSizeError if dt exceeds max_step.
Trajectory propagate(const TimeDependentHamiltonian& h, const DecayRates& rates, const Matrix4c& rho0,
                     double t_end, double dt, int record_every = 1, double t0 = 0.0);

/// Mean of tr(rho(t) O) over the largest whole number of `period`s that fits
/// between t_start and the end of the trajectory (trapezoidal rule). Throws
/// WindowError if less than one period is available.
Complex time_averaged_observable(const Trajectory& trajectory, const Matrix4c& observable, double t_start,
                                 double period);

/// State at t = 0 of the periodic asymptotic solution of a model with period
/// h.period: the one-period propagator is built by RK4 on all 16 basis
/// matrices and its unit-eigenvalue fixed point is solved with the trace row.
DensityMatrix periodic_steady_state(const TimeDependentHamiltonian& h, const DecayRates& rates,
                                    int steps_per_period);

/// |i><j|, the observable whose expectation tr(rho O) is rho_ji.
Matrix4c transition_operator(int i, int j);

}  // namespace rydmix::lindblad
