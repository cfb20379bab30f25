#include "rydmix/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "rydmix/error.hpp"

namespace rydmix {
namespace {

constexpr const char* kModule = "config";

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw std::invalid_argument("expected a number");
  return out;
}

int to_int(const std::string& v) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw std::invalid_argument("expected an integer");
  return out;
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("expected true or false");
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

Setter real(double RunConfig::*field) {
  return [field](RunConfig& c, const std::string& v) { c.*field = to_double(v); };
}
Setter integer(int RunConfig::*field) {
  return [field](RunConfig& c, const std::string& v) { c.*field = to_int(v); };
}
Setter param(double SystemParams::*field) {
  return [field](RunConfig& c, const std::string& v) { c.params.*field = to_double(v); };
}
Setter decay(int level) {
  return [level](RunConfig& c, const std::string& v) {
    c.params.decay.gamma[static_cast<std::size_t>(level)] = to_double(v);
  };
}
Setter box(double optimizer::ConstraintBox::*field) {
  return [field](RunConfig& c, const std::string& v) { c.box.*field = to_double(v); };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"command", [](RunConfig& c, const std::string& v) { c.command = v; }},
      {"probe.omega_rabi", param(&SystemParams::omega_p_rabi)},
      {"probe.delta", param(&SystemParams::delta_p)},
      {"coupling.omega_rabi", param(&SystemParams::omega_c_rabi)},
      {"coupling.delta", param(&SystemParams::delta_c)},
      {"mw.omega_L", param(&SystemParams::omega_L)},
      {"mw.omega_s", param(&SystemParams::omega_s)},
      {"mw.delta_f", param(&SystemParams::delta_f)},
      {"mw.delta_M", param(&SystemParams::delta_M)},
      {"rf.A", param(&SystemParams::A)},
      {"rf.A_prime", param(&SystemParams::A_prime)},
      {"rf.omega", param(&SystemParams::omega)},
      {"rf.a_over_omega", [](RunConfig& c, const std::string& v) { c.a_over_omega = to_double(v); }},
      {"rf.tune", [](RunConfig& c, const std::string& v) { c.rf_tune = to_bool(v); }},
      {"decay.gamma1", decay(0)},
      {"decay.gamma2", decay(1)},
      {"decay.gamma3", decay(2)},
      {"decay.gamma4", decay(3)},
      {"model.k", [](RunConfig& c, const std::string& v) { c.sweep.model.k = to_int(v); }},
      {"model.n_max", [](RunConfig& c, const std::string& v) { c.sweep.model.n_max = to_int(v); }},
      {"model.m_max", [](RunConfig& c, const std::string& v) { c.sweep.model.m_max = to_int(v); }},
      {"model.denominator",
       [](RunConfig& c, const std::string& v) {
         if (v == "sideband_spacing") {
           c.sweep.model.denominator = ShiftDenominator::SidebandSpacing;
         } else if (v == "bare_detuning") {
           c.sweep.model.denominator = ShiftDenominator::BareDetuning;
         } else {
           throw std::invalid_argument("expected sideband_spacing or bare_detuning");
         }
       }},
      {"spectrum.delta_min", real(&RunConfig::spectrum_min)},
      {"spectrum.delta_max", real(&RunConfig::spectrum_max)},
      {"spectrum.points", integer(&RunConfig::spectrum_points)},
      {"spectrum.method",
       [](RunConfig& c, const std::string& v) {
         if (v == "periodic") {
           c.sweep.method = spectroscopy::PropagationMethod::Periodic;
         } else if (v == "burn_in") {
           c.sweep.method = spectroscopy::PropagationMethod::BurnIn;
         } else {
           throw std::invalid_argument("expected periodic or burn_in");
         }
       }},
      {"spectrum.steps_per_period", [](RunConfig& c, const std::string& v) { c.sweep.steps_per_period = to_int(v); }},
      {"spectrum.burn_in_us", [](RunConfig& c, const std::string& v) { c.sweep.burn_in_us = to_double(v); }},
      {"spectrum.averaging_periods",
       [](RunConfig& c, const std::string& v) { c.sweep.averaging_periods = to_int(v); }},
      {"heterodyne.samples_per_period", integer(&RunConfig::heterodyne_samples)},
      {"heterodyne.periods", integer(&RunConfig::heterodyne_periods)},
      {"heterodyne.kappa", real(&RunConfig::heterodyne_kappa)},
      {"heterodyne.delta_p_probe", [](RunConfig& c, const std::string& v) { c.heterodyne_delta_p = to_double(v); }},
      {"box.a_max", box(&optimizer::ConstraintBox::a_max)},
      {"box.omega_min", box(&optimizer::ConstraintBox::omega_min)},
      {"box.omega_max", box(&optimizer::ConstraintBox::omega_max)},
      {"map.delta_min", real(&RunConfig::map_min)},
      {"map.delta_max", real(&RunConfig::map_max)},
      {"map.step", real(&RunConfig::map_step)},
      {"optimize.delta_M", real(&RunConfig::optimize_delta_M)},
      {"sensitivity.baseline", real(&RunConfig::sensitivity_baseline)},
      {"bound.ratio_min", real(&RunConfig::bound_min)},
      {"bound.ratio_max", real(&RunConfig::bound_max)},
      {"bound.points", integer(&RunConfig::bound_points)},
      {"bound.k", integer(&RunConfig::bound_k)},
  };
  return table;
}

}  // namespace

RunConfig parse_config(const std::string& text, RunConfig base) {
  RunConfig config = std::move(base);
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  int settings = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(kModule, "line " + std::to_string(line_no) + ": expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError(kModule, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    try {
      it->second(config, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(kModule, "line " + std::to_string(line_no) + ": bad value '" + value + "' for " + key +
                                     " (" + e.what() + ")");
    }
    ++settings;
  }
  if (settings == 0) throw ConfigError(kModule, "configuration contains no settings");

  if (config.rf_tune) {
    const double ratio = config.a_over_omega.value_or(config.params.a() / config.params.omega);
    const auto tuning = solve_rf_resonance(config.params.delta_M, ratio, config.sweep.model.k, config.params,
                                           config.sweep.model.m_max, config.sweep.model.denominator);
    config.params = apply_tuning(config.params, tuning);
  } else if (config.a_over_omega) {
    config.params.A_prime = config.params.A + *config.a_over_omega * config.params.omega;
  }
  return config;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError(kModule, "cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), std::move(base));
}

}  // namespace rydmix
