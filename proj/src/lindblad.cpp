#include "rydmix/lindblad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "rydmix/error.hpp"

namespace rydmix::lindblad {
namespace {

constexpr const char* kModule = "lindblad";
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex kI{0.0, 1.0};

}  // namespace

DensityMatrix DensityMatrix::pure(int level) {
  Matrix4c rho = Matrix4c::Zero();
  rho(level, level) = 1.0;
  return DensityMatrix(rho);
}

Diagnostics DensityMatrix::diagnostics() const {
  Diagnostics d;
  d.hermiticity_error = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  d.trace_error = std::abs(rho_.trace() - 1.0);
  const Matrix4c hermitian = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(hermitian, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = solver.eigenvalues().minCoeff();
  return d;
}

Matrix4c dissipator(const Matrix4c& rho, const DecayRates& rates) {
  Matrix4c out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j) out(i, j) = -rates.pair(i, j) * rho(i, j);
    }
  }
  const auto& g = rates.gamma;
  out(0, 0) = g[1] * rho(1, 1);
  out(1, 1) = g[2] * rho(2, 2) - g[1] * rho(1, 1);
  out(2, 2) = g[3] * rho(3, 3) - g[2] * rho(2, 2);
  out(3, 3) = -g[3] * rho(3, 3);
  return out;
}

Matrix4c generator(const HamiltonianMatrix& h, const Matrix4c& rho, const DecayRates& rates) {
  Matrix4c commutator = h * rho;
  commutator.noalias() -= rho * h;
  return -kI * commutator + dissipator(rho, rates);
}

Matrix4c master_rhs(const HamiltonianMatrix& h, const Matrix4c& rho, const DecayRates& rates) {
  return kTwoPi * generator(h, rho, rates);
}

Liouvillian liouvillian(const HamiltonianMatrix& h, const DecayRates& rates) {
  Liouvillian l = Liouvillian::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const int row = vec_index(i, j);
      for (int k = 0; k < 4; ++k) {
        l(row, vec_index(k, j)) += -kI * h(i, k);
        l(row, vec_index(i, k)) += kI * h(k, j);
      }
      if (i != j) l(row, row) -= rates.pair(i, j);
    }
  }
  // Cascade 4 -> 3 -> 2 -> 1 on the populations.
  for (int level = 1; level < 4; ++level) {
    const double g = rates.gamma[static_cast<std::size_t>(level)];
    l(vec_index(level, level), vec_index(level, level)) -= g;
    l(vec_index(level - 1, level - 1), vec_index(level, level)) += g;
  }
  return kTwoPi * l;
}

namespace {

Vector16c vectorize(const Matrix4c& m) {
  Vector16c v;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) v(vec_index(i, j)) = m(i, j);
  }
  return v;
}

Matrix4c unvectorize(const Vector16c& v) {
  Matrix4c m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m(i, j) = v(vec_index(i, j));
  }
  return m;
}

// Replaces row 0 with the trace functional and solves for tr(rho) = 1.
Vector16c solve_with_trace_row(Liouvillian system) {
  system.row(0).setZero();
  for (int i = 0; i < 4; ++i) system(0, vec_index(i, i)) = 1.0;
  Vector16c rhs = Vector16c::Zero();
  rhs(0) = 1.0;
  return system.fullPivLu().solve(rhs);
}

}  // namespace

DensityMatrix steady_state(const HamiltonianMatrix& h, const DecayRates& rates) {
  const Liouvillian l = liouvillian(h, rates);
  Eigen::FullPivLU<Liouvillian> lu(l);
  lu.setThreshold(1e-12);
  const int rank = static_cast<int>(lu.rank());
  if (rank < 15) {
    throw DegenerateNullSpaceError(
        kModule, "Liouvillian null space is degenerate (numerical rank " + std::to_string(rank) + " < 15)",
        rank);
  }
  return DensityMatrix(unvectorize(solve_with_trace_row(l)));
}

double steady_state_residual(const HamiltonianMatrix& h, const DensityMatrix& rho, const DecayRates& rates) {
  return generator(h, rho.matrix(), rates).cwiseAbs().maxCoeff();
}

double max_step(const TimeDependentHamiltonian& h, const DecayRates& rates) {
  const double nu_max = std::max(h.max_frequency, rates.max());
  if (nu_max <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (50.0 * nu_max);
}

namespace {

void check_step(const TimeDependentHamiltonian& h, const DecayRates& rates, double dt) {
  if (!(dt > 0.0)) throw StepSizeError(kModule, "time step must be positive");
  const double limit = max_step(h, rates);
  if (dt > limit * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "time step " << dt << " us exceeds 1/(50 nu_max) = " << limit << " us";
    throw StepSizeError(kModule, os.str());
  }
}

// RK4 advance of several states sharing the Hamiltonian evaluations.
template <std::size_t N>
void rk4_step(const TimeDependentHamiltonian& h, const DecayRates& rates, double t, double dt,
              std::array<Matrix4c, N>& states) {
  const HamiltonianMatrix h0 = h.at(t);
  const HamiltonianMatrix h_mid = h.at(t + 0.5 * dt);
  const HamiltonianMatrix h1 = h.at(t + dt);
  for (auto& rho : states) {
    const Matrix4c k1 = master_rhs(h0, rho, rates);
    const Matrix4c k2 = master_rhs(h_mid, rho + (0.5 * dt) * k1, rates);
    const Matrix4c k3 = master_rhs(h_mid, rho + (0.5 * dt) * k2, rates);
    const Matrix4c k4 = master_rhs(h1, rho + dt * k3, rates);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
}

}  // namespace

Trajectory propagate(const TimeDependentHamiltonian& h, const DecayRates& rates, const Matrix4c& rho0,
                     double t_end, double dt, int record_every, double t0) {
  check_step(h, rates, dt);
  if (t_end < t0) throw StepSizeError(kModule, "t_end precedes the start time");
  record_every = std::max(record_every, 1);

  const auto steps = static_cast<long long>(std::ceil((t_end - t0) / dt - 1e-9));
  const double step = steps > 0 ? (t_end - t0) / static_cast<double>(steps) : 0.0;

  Trajectory out;
  std::array<Matrix4c, 1> state{rho0};
  out.times.push_back(t0);
  out.states.push_back(rho0);
  for (long long n = 0; n < steps; ++n) {
    const double t = t0 + static_cast<double>(n) * step;
    rk4_step(h, rates, t, step, state);
    if ((n + 1) % record_every == 0 || n + 1 == steps) {
      out.times.push_back(t0 + static_cast<double>(n + 1) * step);
      out.states.push_back(state[0]);
    }
  }
  return out;
}

Complex time_averaged_observable(const Trajectory& trajectory, const Matrix4c& observable, double t_start,
                                 double period) {
  if (!(period > 0.0)) throw WindowError(kModule, "averaging period must be positive");
  if (trajectory.times.empty()) throw WindowError(kModule, "empty trajectory");
  const double t_last = trajectory.times.back();
  const double periods = std::floor((t_last - t_start) / period + 1e-9);
  if (periods < 1.0) {
    std::ostringstream os;
    os << "averaging window " << (t_last - t_start) << " us is shorter than one period " << period << " us";
    throw WindowError(kModule, os.str());
  }
  const double t_stop = t_start + periods * period;

  auto value = [&](std::size_t idx) { return (trajectory.states[idx] * observable).trace(); };

  Complex integral = 0.0;
  const std::size_t count = trajectory.times.size();
  for (std::size_t n = 0; n + 1 < count; ++n) {
    double lo = trajectory.times[n];
    double hi = trajectory.times[n + 1];
    if (hi <= t_start || lo >= t_stop) continue;
    const Complex f_lo = value(n);
    const Complex f_hi = value(n + 1);
    auto interp = [&](double t) { return f_lo + (f_hi - f_lo) * ((t - trajectory.times[n]) / (hi - lo)); };
    const double a = std::max(lo, t_start);
    const double b = std::min(hi, t_stop);
    integral += 0.5 * (interp(a) + interp(b)) * (b - a);
  }
  return integral / (t_stop - t_start);
}

DensityMatrix periodic_steady_state(const TimeDependentHamiltonian& h, const DecayRates& rates,
                                    int steps_per_period) {
  if (!(h.period > 0.0)) throw DomainError(kModule, "periodic steady state needs a periodic model");
  if (steps_per_period < 1) throw StepSizeError(kModule, "steps_per_period must be positive");
  const double dt = h.period / steps_per_period;
  check_step(h, rates, dt);

  std::array<Matrix4c, 16> basis;
  for (int c = 0; c < 16; ++c) {
    basis[static_cast<std::size_t>(c)] = Matrix4c::Zero();
    basis[static_cast<std::size_t>(c)](c / 4, c % 4) = 1.0;
  }
  for (int n = 0; n < steps_per_period; ++n) rk4_step(h, rates, n * dt, dt, basis);

  Liouvillian monodromy;
  for (int c = 0; c < 16; ++c) monodromy.col(c) = vectorize(basis[static_cast<std::size_t>(c)]);
  monodromy -= Liouvillian::Identity();
  return DensityMatrix(unvectorize(solve_with_trace_row(monodromy)));
}

Matrix4c transition_operator(int i, int j) {
  Matrix4c o = Matrix4c::Zero();
  o(i, j) = 1.0;
  return o;
}

}  // namespace rydmix::lindblad
