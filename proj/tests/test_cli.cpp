#include <doctest.h>

#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rydmix/cli.hpp"
#include "rydmix/config.hpp"
#include "rydmix/error.hpp"
#include "rydmix/parallel.hpp"

using namespace rydmix;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string run_ok(const RunConfig& c) {
  std::ostringstream out;
  std::ostringstream diag;
  REQUIRE(cli::run(c, out, diag) == 0);
  return out.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse_config(
      "# comment line\n"
      "command = map   # trailing comment\n"
      "box.a_max = 1000\n"
      "  mw.omega_L=35\n"
      "model.denominator = bare_detuning\n"
      "spectrum.method = burn_in\n");
  CHECK(c.command == "map");
  CHECK(c.box.a_max == 1000.0);
  CHECK(c.params.omega_L == 35.0);
  CHECK(c.sweep.model.denominator == ShiftDenominator::BareDetuning);
  CHECK(c.sweep.method == spectroscopy::PropagationMethod::BurnIn);
}

TEST_CASE("config errors name the line") {
  CHECK_THROWS_AS(parse_config(""), ConfigError);
  CHECK_THROWS_AS(parse_config("# nothing\n\n"), ConfigError);
  try {
    parse_config("box.a_max = 1\nnot.a.key = 3\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    CHECK(e.module() == "config");
  }
  CHECK_THROWS_AS(parse_config("box.a_max = ten\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("spectrum.points = 3.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("just some words\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/file.conf"), ConfigError);
}

TEST_CASE("RF tuning from the config") {
  const auto c = parse_config("rf.tune = true\nrf.a_over_omega = 0.5\nmw.delta_M = 600\n");
  CHECK(std::abs(c.params.omega - 401.209) < 0.001);
  CHECK(std::abs(c.params.delta_c - (5.0 + 1.8135 / 2.0)) < 0.0005);
  const auto r = parse_config("rf.omega = 300\nrf.a_over_omega = 2\n");
  CHECK(r.params.a() == doctest::Approx(600.0));
}

TEST_CASE("map CSV") {
  RunConfig c;
  c.command = "map";
  c.box = {1000.0, 100.0, 500.0};
  const std::string csv = run_ok(c);
  const auto rows = lines(csv);
  CHECK(rows.size() == 192);
  CHECK(rows[0] == "delta_M_MHz,eta_m,a_star_MHz,omega_star_MHz,k_star,sensitivity_nV");
  double worst = 1.0;
  for (std::size_t i = 1; i < rows.size(); ++i) worst = std::min(worst, std::stod(rows[i].substr(rows[i].find(',') + 1)));
  CHECK(worst >= 1.0 / 3.0);
  CHECK(csv.find('\r') == std::string::npos);
  // Deterministic output.
  CHECK(run_ok(c) == csv);
}

TEST_CASE("other CSV headers") {
  RunConfig c;
  c.command = "bound";
  c.bound_points = 5;
  auto rows = lines(run_ok(c));
  CHECK(rows[0] == "a_over_omega,upper_bound");
  CHECK(rows.size() == 6);

  c.command = "optimize";
  rows = lines(run_ok(c));
  CHECK(rows[0] ==
        "delta_M_MHz,eta_m,a_star_MHz,omega_star_MHz,k_star,sensitivity_nV,delta_M_shift_MHz,omega_retuned_MHz");
  CHECK(rows.size() == 2);
  CHECK(rows[1].rfind("700,0.58186522", 0) == 0);

  c.command = "heterodyne";
  c.heterodyne_samples = 64;
  c.heterodyne_delta_p = -6.6;
  rows = lines(run_ok(c));
  CHECK(rows[0] == "t_us,dT_effective,dT_no2nd");
  CHECK(rows.size() == 2 * 64 + 2);

  c.command = "spectrum";
  c.spectrum_points = 5;
  c.sweep.steps_per_period = 256;
  rows = lines(run_ok(c));
  CHECK(rows[0] == "delta_p_MHz,im_rho21_original,im_rho21_effective,im_rho21_no2nd");
  CHECK(rows.size() == 6);
  CHECK(rows[1].rfind("-30,", 0) == 0);
}

TEST_CASE("validate command") {
  RunConfig c;
  c.command = "validate";
  const auto rows = lines(run_ok(c));
  CHECK(rows.size() >= 8);
  for (const auto& r : rows) CHECK(r.rfind("PASS ", 0) == 0);
}

TEST_CASE("errors are reported with the module") {
  RunConfig c;
  c.command = "optimize";
  c.optimize_delta_M = -5.0;
  std::ostringstream out;
  std::ostringstream diag;
  CHECK(cli::run(c, out, diag) != 0);
  CHECK(diag.str().find("[optimizer]") != std::string::npos);

  c.command = "frobnicate";
  std::ostringstream diag2;
  CHECK(cli::run(c, out, diag2) != 0);
  CHECK(diag2.str().find("unknown command") != std::string::npos);
}

TEST_CASE("parallel_for") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += static_cast<int>(i); }, 4);
  for (std::size_t i = 0; i < hits.size(); ++i) CHECK(hits[i] == static_cast<int>(i));

  std::atomic<int> calls{0};
  CHECK_THROWS_AS(parallel_for(
                      100,
                      [&](std::size_t i) {
                        ++calls;
                        if (i == 17) throw std::runtime_error("boom");
                      },
                      3),
                  std::runtime_error);
  CHECK(sweep_threads() >= 1);
}
