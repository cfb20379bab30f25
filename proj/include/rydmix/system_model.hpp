#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

namespace rydmix {

// Unit convention used throughout: every frequency-like quantity is a numeral
// nu in MHz standing for the angular frequency 2*pi*nu Mrad/s. Times are in
// microseconds, so a phase accumulated over t is 2*pi*nu*t.

/// Decay rates gamma_1..gamma_4 of the four levels [MHz].
struct DecayRates {
  std::array<double, 4> gamma{0.0, 5.0, 0.003, 0.003};

  /// gamma_ij = (gamma_i + gamma_j) / 2, zero-based indices.
  double pair(int i, int j) const { return 0.5 * (gamma[i] + gamma[j]); }
  double max() const;
};

/// All laser, MW, RF and decay parameters of one simulation run. The defaults
/// are the values used for the second-order validation figure: a k = 1 sideband
/// at a/omega = 0.5 tuned for a 600 MHz detuned MW field.
struct SystemParams {
  double omega_p_rabi = 0.1;        // probe Rabi frequency
  double omega_c_rabi = 10.0;       // coupling Rabi frequency
  double delta_p = 0.0;             // probe detuning
  double delta_c = 5.0 + 1.8135 / 2.0;  // coupling detuning
  double omega_L = 40.0;            // local MW Rabi frequency
  double omega_s = 0.0;             // signal MW Rabi frequency
  double delta_f = 1e-3;            // local/signal beat frequency
  double delta_M = 600.0;           // MW detuning omega_34 - omega_M
  double A = 5.0;                   // Stark amplitude of |3>
  double A_prime = 5.0 + 0.5 * 401.209;  // Stark amplitude of |4>
  double omega = 401.209;           // control modulation frequency 2*omega_RF
  DecayRates decay;

  /// a = A' - A.
  double a() const { return A_prime - A; }
  /// Static MW Rabi magnitude at zero beat phase, Omega_L + Omega_s.
  double omega_M_static() const { return omega_L + omega_s; }

  /// Throws DomainError on hard invariant violations (negative Rabi or decay
  /// rates, non-positive omega, non-finite values). Returns soft warnings, e.g.
  /// leaving the far-detuning regime |Omega_L + Omega_s| <= 0.2 |Delta_M|.
  std::vector<std::string> validate() const;
};

/// How the sideband denominators of the second-order shift are evaluated.
enum class ShiftDenominator {
  /// -(m - k) omega: the pure Floquet-mode frequency of sideband m relative to
  /// the retained sideband k. Reproduces delta_M = 1.8135 MHz at the default
  /// parameters.
  SidebandSpacing,
  /// Delta_M - a - m omega: the bare detuning of sideband m. Differs from
  /// SidebandSpacing at third order; raises SingularityError near resonance.
  BareDetuning,
};

/// Model knobs shared by the Hamiltonian builders and the sweeps.
struct ModelOptions {
  int k = 1;        // retained MW sideband
  int n_max = 40;   // sideband truncation of the rotated Hamiltonian
  int m_max = 50;   // truncation of second-order sums
  ShiftDenominator denominator = ShiftDenominator::SidebandSpacing;
};

struct EffectiveDetunings {
  double delta_M_shift = 0.0;  // delta_M
  double delta_c_eff = 0.0;    // Delta_c - A - delta_M / 2
  double delta_M_eff = 0.0;    // Delta_M - a - k omega + delta_M
  double a = 0.0;              // A' - A
  int k = 0;
};

/// Second-order quantum-mixing shift delta_M [MHz]:
///   sum_{m != k, |m| <= m_max} Omega_M^2 J_m^2(a/omega) / (2 d_m)
/// with Omega_M = Omega_L + Omega_s and d_m chosen by `denominator`.
/// Throws SingularityError if a BareDetuning denominator is below 1e-6 MHz.
double second_order_shift(const SystemParams& params, int k, int m_max = 50,
                          ShiftDenominator denominator = ShiftDenominator::SidebandSpacing);

EffectiveDetunings effective_detunings(const SystemParams& params, const ModelOptions& options,
                                       bool include_second_order = true);

struct RfTuning {
  double omega = 0.0;          // control frequency satisfying the resonance
  double a = 0.0;              // ratio * omega
  double delta_M_shift = 0.0;  // delta_M at the solution
  double delta_c = 0.0;        // coupling detuning zeroing delta_c_eff: A + delta_M / 2
  int iterations = 0;
};

/// Solves Delta_M = a + k omega - delta_M(omega) with a = ratio * omega by plain
/// fixed-point iteration on omega (threshold 1e-9 MHz, at most 100 iterations).
/// Throws ConvergenceError if the iteration does not settle.
RfTuning solve_rf_resonance(double delta_M, double ratio, int k, const SystemParams& params,
                            int m_max = 50,
                            ShiftDenominator denominator = ShiftDenominator::SidebandSpacing);

/// Returns params with omega, A' and Delta_c replaced by the tuned values.
SystemParams apply_tuning(SystemParams params, const RfTuning& tuning);

/// Value returned by second_order_bound where J_k(ratio) vanishes.
inline constexpr double kBoundDiverges = std::numeric_limits<double>::infinity();

/// Upper bound on |delta_M / (J_k(a/omega) Omega_M)| under Omega_M J_k <= 0.1 omega:
///   | sum_{m != k} 0.1 J_m^2(r) / (-2 (m - k) J_k^2(r)) |.
/// Returns kBoundDiverges when |J_k(r)| < 1e-12.
double second_order_bound(double ratio, int k, int m_max = 50);

}  // namespace rydmix
