#include "rydmix/system_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rydmix/error.hpp"
#include "rydmix/special_functions.hpp"

namespace rydmix {
namespace {

constexpr const char* kModule = "system_model";

void require(bool condition, const std::string& message) {
  if (!condition) throw DomainError(kModule, message);
}

void check_truncation(int k, int m_max) {
  require(m_max >= std::abs(k) + 5, "m_max must be at least |k| + 5");
}

}  // namespace

double DecayRates::max() const { return *std::max_element(gamma.begin(), gamma.end()); }

std::vector<std::string> SystemParams::validate() const {
  const double values[] = {omega_p_rabi, omega_c_rabi, delta_p, delta_c, omega_L, omega_s,
                           delta_f,      delta_M,      A,       A_prime, omega};
  for (double v : values) require(std::isfinite(v), "parameters must be finite");
  require(omega_p_rabi >= 0 && omega_c_rabi >= 0 && omega_L >= 0 && omega_s >= 0,
          "Rabi frequencies must be non-negative");
  for (double g : decay.gamma) require(std::isfinite(g) && g >= 0, "decay rates must be non-negative");
  require(omega > 0, "control frequency omega must be positive");

  std::vector<std::string> warnings;
  if (std::abs(omega_L + omega_s) > 0.2 * std::abs(delta_M)) {
    std::ostringstream os;
    os << "outside far-detuning regime: |Omega_L + Omega_s| = " << std::abs(omega_L + omega_s)
       << " MHz exceeds 0.2 |Delta_M| = " << 0.2 * std::abs(delta_M) << " MHz";
    warnings.push_back(os.str());
  }
  return warnings;
}

double second_order_shift(const SystemParams& params, int k, int m_max, ShiftDenominator denominator) {
  require(params.omega > 0, "control frequency omega must be positive");
  check_truncation(k, m_max);

  const double omega_M = params.omega_M_static();
  const double a = params.a();
  const double ratio = a / params.omega;
  double sum = 0.0;
  for (int m = -m_max; m <= m_max; ++m) {
    if (m == k) continue;
    double d = 0.0;
    if (denominator == ShiftDenominator::SidebandSpacing) {
      d = -(m - k) * params.omega;
    } else {
      d = params.delta_M - a - m * params.omega;
      if (std::abs(d) < 1e-6) {
        throw SingularityError(kModule, "sideband m = " + std::to_string(m) +
                                            " is resonant: |Delta_M - a - m omega| < 1e-6 MHz");
      }
    }
    const double jm = bessel::j(m, ratio);
    sum += jm * jm / (2.0 * d);
  }
  return omega_M * omega_M * sum;
}

EffectiveDetunings effective_detunings(const SystemParams& params, const ModelOptions& options,
                                       bool include_second_order) {
  EffectiveDetunings out;
  out.k = options.k;
  out.a = params.a();
  out.delta_M_shift = include_second_order
                          ? second_order_shift(params, options.k, options.m_max, options.denominator)
                          : 0.0;
  out.delta_c_eff = params.delta_c - params.A - out.delta_M_shift / 2.0;
  out.delta_M_eff = params.delta_M - out.a - options.k * params.omega + out.delta_M_shift;
  return out;
}

RfTuning solve_rf_resonance(double delta_M, double ratio, int k, const SystemParams& params, int m_max,
                            ShiftDenominator denominator) {
  require(k >= 0, "solve_rf_resonance requires k >= 0");
  require(ratio > 0, "solve_rf_resonance requires a/omega > 0");
  require(delta_M > 0, "solve_rf_resonance requires Delta_M > 0");

  SystemParams trial = params;
  trial.delta_M = delta_M;
  auto shift_at = [&](double omega) {
    trial.omega = omega;
    trial.A_prime = trial.A + ratio * omega;
    return second_order_shift(trial, k, m_max, denominator);
  };

  double omega = delta_M / (ratio + k);
  for (int it = 1; it <= 100; ++it) {
    const double shift = shift_at(omega);
    const double next = (delta_M + shift) / (ratio + k);
    if (!(next > 0) || !std::isfinite(next)) break;
    const bool settled = std::abs(next - omega) <= 1e-9;
    omega = next;
    if (settled) {
      RfTuning out;
      out.omega = omega;
      out.a = ratio * omega;
      out.delta_M_shift = shift_at(omega);
      out.delta_c = params.A + out.delta_M_shift / 2.0;
      out.iterations = it;
      return out;
    }
  }
  throw ConvergenceError(kModule, "RF resonance iteration did not converge within 100 steps "
                                  "(geometry close to a sideband resonance?)");
}

SystemParams apply_tuning(SystemParams params, const RfTuning& tuning) {
  params.omega = tuning.omega;
  params.A_prime = params.A + tuning.a;
  params.delta_c = tuning.delta_c;
  return params;
}

double second_order_bound(double ratio, int k, int m_max) {
  require(ratio > 0, "bound requires a/omega > 0");
  check_truncation(k, m_max);
  const double jk = bessel::j(k, ratio);
  if (std::abs(jk) < 1e-12) return kBoundDiverges;
  double sum = 0.0;
  for (int m = -m_max; m <= m_max; ++m) {
    if (m == k) continue;
    const double jm = bessel::j(m, ratio);
    sum += 0.1 * jm * jm / (-2.0 * (m - k) * jk * jk);
  }
  return std::abs(sum);
}

}  // namespace rydmix
