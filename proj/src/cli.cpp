#include "rydmix/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <initializer_list>
#include <string>

#include <CLI11.hpp>

#include "rydmix/error.hpp"
#include "rydmix/heterodyne.hpp"
#include "rydmix/optimizer.hpp"
#include "rydmix/spectroscopy.hpp"
#include "rydmix/validation.hpp"

namespace rydmix::cli {
namespace {

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void row(std::ostream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out << ',';
    out << number(v);
    first = false;
  }
  out << '\n';
}

void warn_all(std::ostream& diag, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) diag << "warning: " << w << '\n';
}

int spectrum(const RunConfig& c, std::ostream& out, std::ostream& diag) {
  warn_all(diag, c.params.validate());
  const auto grid = spectroscopy::linear_grid(c.spectrum_min, c.spectrum_max, c.spectrum_points);
  const auto original = spectroscopy::sweep_spectrum(c.params, ModelVariant::Original, grid, c.sweep);
  const auto effective = spectroscopy::sweep_spectrum(c.params, ModelVariant::Effective, grid, c.sweep);
  const auto no2nd = spectroscopy::sweep_spectrum(c.params, ModelVariant::EffectiveNo2nd, grid, c.sweep);
  out << "delta_p_MHz,im_rho21_original,im_rho21_effective,im_rho21_no2nd\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    row(out, {grid[i], original.points[i].value, effective.points[i].value, no2nd.points[i].value});
  }
  return 0;
}

int heterodyne_signal(const RunConfig& c, std::ostream& out, std::ostream& diag) {
  warn_all(diag, c.params.validate());
  const double probe = c.heterodyne_delta_p ? *c.heterodyne_delta_p
                                            : heterodyne::default_operating_point(c.params, c.sweep.model);
  diag << "probe operating point delta_p = " << number(probe) << " MHz\n";
  heterodyne::HeterodyneSettings s;
  s.model = c.sweep.model;
  s.samples_per_period = c.heterodyne_samples;
  s.periods = c.heterodyne_periods;
  s.kappa = c.heterodyne_kappa;
  s.threads = c.sweep.threads;
  const auto eff = heterodyne::synthesize(c.params, ModelVariant::Effective, probe, s);
  const auto no2nd = heterodyne::synthesize(c.params, ModelVariant::EffectiveNo2nd, probe, s);
  warn_all(diag, eff.warnings);
  out << "t_us,dT_effective,dT_no2nd\n";
  for (std::size_t i = 0; i < eff.t.size(); ++i) row(out, {eff.t[i], eff.delta_T[i], no2nd.delta_T[i]});
  return 0;
}

int bound(const RunConfig& c, std::ostream& out) {
  const auto grid = spectroscopy::linear_grid(c.bound_min, c.bound_max, c.bound_points);
  out << "a_over_omega,upper_bound\n";
  for (double r : grid) row(out, {r, second_order_bound(r, c.bound_k, c.sweep.model.m_max)});
  return 0;
}

int map(const RunConfig& c, std::ostream& out, std::ostream& diag) {
  if (!(c.map_step > 0.0) || c.map_max < c.map_min) throw ConfigError("config", "map range must be increasing");
  std::vector<double> deltas;
  const auto n = static_cast<int>(std::floor((c.map_max - c.map_min) / c.map_step + 1e-9));
  for (int i = 0; i <= n; ++i) deltas.push_back(c.map_min + i * c.map_step);

  const auto points = optimizer::sensitivity_map(deltas, c.box, c.sweep.threads);
  out << "delta_M_MHz,eta_m,a_star_MHz,omega_star_MHz,k_star,sensitivity_nV\n";
  int infeasible = 0;
  const double nan = std::nan("");
  for (const auto& p : points) {
    if (!p.feasible) {
      ++infeasible;
      row(out, {p.delta_M, nan, nan, nan, -1.0, nan});
      continue;
    }
    const auto& r = p.result;
    row(out, {r.delta_M, r.eta_m, r.a_star, r.omega_star, static_cast<double>(r.k_star),
              optimizer::sensitivity_in_field_units(r, c.sensitivity_baseline)});
  }
  if (infeasible > 0) diag << "warning: " << infeasible << " infeasible detunings written as nan\n";
  return 0;
}

int optimize(const RunConfig& c, std::ostream& out, std::ostream& diag) {
  const auto r = optimizer::optimize(c.optimize_delta_M, c.box);

  // Second-order shift at the optimum, and the control frequency that absorbs it.
  SystemParams p = c.params;
  p.delta_M = r.delta_M;
  p.omega = r.omega_star;
  p.A_prime = p.A + r.a_star;
  const double shift = second_order_shift(p, r.k_star, c.sweep.model.m_max, c.sweep.model.denominator);
  double retuned = std::nan("");
  try {
    retuned = solve_rf_resonance(r.delta_M, r.a_star / r.omega_star, r.k_star, p, c.sweep.model.m_max,
                                 c.sweep.model.denominator)
                  .omega;
  } catch (const ConvergenceError& e) {
    diag << "warning: " << e.what() << '\n';
  }
  out << "delta_M_MHz,eta_m,a_star_MHz,omega_star_MHz,k_star,sensitivity_nV,delta_M_shift_MHz,omega_retuned_MHz\n";
  row(out, {r.delta_M, r.eta_m, r.a_star, r.omega_star, static_cast<double>(r.k_star),
            optimizer::sensitivity_in_field_units(r, c.sensitivity_baseline), shift, retuned});
  return 0;
}

int validate(std::ostream& out) {
  bool ok = true;
  for (const auto& check : validation::invariant_suite()) {
    out << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail << '\n';
    ok = ok && check.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& diag) {
  try {
    const std::string& cmd = config.command;
    if (cmd == "spectrum") return spectrum(config, out, diag);
    if (cmd == "heterodyne") return heterodyne_signal(config, out, diag);
    if (cmd == "bound") return bound(config, out);
    if (cmd == "map") return map(config, out, diag);
    if (cmd == "optimize") return optimize(config, out, diag);
    if (cmd == "validate") return validate(out);
    diag << "error [cli]: unknown command '" << cmd
         << "' (expected spectrum, heterodyne, optimize, map, bound or validate)\n";
    return 2;
  } catch (const Error& e) {
    diag << "error [" << e.module() << "]: " << e.what() << '\n';
    return 1;
  }
}

int main(int argc, char** argv) {
  CLI::App app{"Rydberg quantum-mixer microwave sensor simulations"};
  std::string config_path;
  std::string out_path;
  std::string command;
  std::string positional;
  app.add_option("--config", config_path, "configuration file (dotted.key = value)");
  app.add_option("--out", out_path, "output CSV path (default: stdout)");
  app.add_option("--command", command, "spectrum, heterodyne, optimize, map, bound or validate");
  app.add_option("command_name", positional, "command, alternative to --command");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  RunConfig config;
  try {
    if (!config_path.empty()) config = load_config(config_path);
  } catch (const Error& e) {
    std::cerr << "error [" << e.module() << "]: " << e.what() << '\n';
    return 1;
  }
  if (!positional.empty()) config.command = positional;
  if (!command.empty()) config.command = command;
  if (!out_path.empty()) config.output_path = out_path;
  if (config.command.empty()) {
    std::cerr << "error [cli]: no command given\n";
    return 2;
  }

  if (config.output_path.empty()) return run(config, std::cout, std::cerr);
  std::ofstream file(config.output_path, std::ios::binary);
  if (!file) {
    std::cerr << "error [cli]: cannot write '" << config.output_path << "'\n";
    return 1;
  }
  const int status = run(config, file, std::cerr);
  file.close();
  if (!file) {
    std::cerr << "error [cli]: failed writing '" << config.output_path << "'\n";
    return 1;
  }
  return status;
}

}  // namespace rydmix::cli
