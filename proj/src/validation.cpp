#include "rydmix/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "rydmix/hamiltonian.hpp"
#include "rydmix/lindblad.hpp"
#include "rydmix/optimizer.hpp"
#include "rydmix/special_functions.hpp"

namespace rydmix::validation {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string format(double value) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << value;
  return os.str();
}

Check make_check(std::string name, double error, double tolerance) {
  return {std::move(name), error <= tolerance, "error " + format(error) + " (tolerance " + format(tolerance) + ")"};
}

Matrix4c control_unitary(const SystemParams& p, double t) {
  auto theta = [&](double amplitude) {
    return kTwoPi * amplitude * (t + std::sin(kTwoPi * p.omega * t) / (kTwoPi * p.omega));
  };
  Matrix4c u = Matrix4c::Identity();
  u(2, 2) = std::polar(1.0, -theta(p.A));
  u(3, 3) = std::polar(1.0, -theta(p.A_prime));
  return u;
}

}  // namespace

double propagator_equivalence_error(const SystemParams& params, const ModelOptions& options, double t_end) {
  DecayRates closed;
  closed.gamma = {0.0, 0.0, 0.0, 0.0};
  const double nu = std::max(hamiltonian::original_dynamics(params).max_frequency,
                             hamiltonian::rotated_dynamics(params, options).max_frequency);

  TimeDependentHamiltonian original;
  original.at = [params](double t) { return hamiltonian::build_original(params, t, params.omega_M_static()); };
  original.max_frequency = nu;
  TimeDependentHamiltonian rotated;
  rotated.at = [params, n = options.n_max](double t) { return hamiltonian::build_rotated(params, t, n); };
  rotated.max_frequency = nu;

  const Matrix4c rho0 = Matrix4c::Constant(0.25);
  const double dt = lindblad::max_step(original, closed);
  const int no_records = std::numeric_limits<int>::max();
  const auto a = lindblad::propagate(original, closed, rho0, t_end, dt, no_records);
  const auto b = lindblad::propagate(rotated, closed, rho0, t_end, dt, no_records);
  const Matrix4c u = control_unitary(params, t_end);
  return (a.states.back() - u * b.states.back() * u.adjoint()).cwiseAbs().maxCoeff();
}

Drift propagation_drift(const SystemParams& params, double t_end) {
  const auto dynamics = hamiltonian::original_dynamics(params);
  const double dt = lindblad::max_step(dynamics, params.decay);
  const int every = std::max(1, static_cast<int>(0.01 / dt));
  const auto traj =
      lindblad::propagate(dynamics, params.decay, lindblad::DensityMatrix::pure(0).matrix(), t_end, dt, every);
  Drift d;
  for (const auto& rho : traj.states) {
    d.trace = std::max(d.trace, std::abs(rho.trace() - 1.0));
    d.hermiticity = std::max(d.hermiticity, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
  }
  return d;
}

std::vector<Check> invariant_suite() {
  std::vector<Check> checks;
  std::mt19937 rng(20240611);

  {
    double err = 0.0;
    std::uniform_real_distribution<double> x_dist(0.1, 60.0);
    for (int trial = 0; trial < 200; ++trial) {
      const double x = x_dist(rng);
      const int n = 1 + trial % 60;
      err = std::max(err, std::abs(bessel::j(n - 1, x) + bessel::j(n + 1, x) - 2.0 * n / x * bessel::j(n, x)));
      err = std::max(err, std::abs(bessel::j(-n, x) - (n % 2 ? -1.0 : 1.0) * bessel::j(n, x)));
      double norm = bessel::j(0, x) * bessel::j(0, x);
      for (int k = 1; k <= bessel::kMaxOrder; ++k) norm += 2.0 * bessel::j(k, x) * bessel::j(k, x);
      err = std::max(err, std::abs(norm - 1.0));
    }
    checks.push_back(make_check("bessel recurrence, parity and normalization", err, 1e-10));
  }

  {
    std::normal_distribution<double> g;
    DecayRates rates;
    rates.gamma = {0.7, 5.0, 0.3, 1.1};
    double err = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      Matrix4c m;
      for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = Complex(g(rng), g(rng));
      const Matrix4c rho = m * m.adjoint() / (m * m.adjoint()).trace();
      err = std::max(err, std::abs(lindblad::dissipator(rho, rates).trace()));
    }
    checks.push_back(make_check("dissipator is trace free", err, 1e-14));
  }

  const SystemParams fig;
  {
    const auto model = hamiltonian::build_effective(fig, {}, true);
    const auto rho = lindblad::steady_state(model.h, fig.decay);
    checks.push_back(make_check("steady-state residual", lindblad::steady_state_residual(model.h, rho, fig.decay),
                                1e-10));
    checks.push_back(make_check("steady-state positivity", std::max(0.0, -rho.diagnostics().min_eigenvalue), 1e-8));
  }

  {
    const Drift d = propagation_drift(fig, 1.0);
    checks.push_back(make_check("propagation trace drift over 1 us", d.trace, 1e-8));
    checks.push_back(make_check("propagation Hermiticity drift over 1 us", d.hermiticity, 1e-8));
  }

  {
    SystemParams p = fig;
    p.delta_p = 1.0;
    checks.push_back(make_check("rotated vs original propagator over 0.1 us",
                                propagator_equivalence_error(p, {}, 0.1), 1e-6));
  }

  {
    checks.push_back(
        make_check("second-order shift at the default geometry", std::abs(second_order_shift(fig, 1) - 1.8135), 5e-4));
  }

  {
    // Brute force over a 10^6-point omega grid and every feasible k.
    const optimizer::ConstraintBox box{1000.0, 100.0, 500.0};
    std::uniform_real_distribution<double> d_dist(100.0, 2000.0);
    double err = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      const double delta = d_dist(rng);
      const auto result = optimizer::optimize(delta, box);
      double brute = 0.0;
      constexpr int kPoints = 1000000;
      for (int i = 0; i <= kPoints; ++i) {
        const double omega = box.omega_min + (box.omega_max - box.omega_min) * i / kPoints;
        const int k_lo = std::max(0, static_cast<int>(std::ceil((delta - box.a_max) / omega)));
        for (int k = k_lo; k * omega < delta; ++k) {
          brute = std::max(brute, std::abs(bessel::j(k, (delta - k * omega) / omega)));
        }
      }
      err = std::max(err, std::abs(result.eta_m - brute));
    }
    checks.push_back(make_check("optimizer vs brute-force grid", err, 1e-4));
  }
  return checks;
}

}  // namespace rydmix::validation
