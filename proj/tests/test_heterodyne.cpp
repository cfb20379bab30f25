#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rydmix/error.hpp"
#include "rydmix/heterodyne.hpp"
#include "rydmix/special_functions.hpp"

using namespace rydmix;
using namespace rydmix::heterodyne;

namespace {

SystemParams tuned(double ratio, double omega_s) {
  const SystemParams base;
  SystemParams p = apply_tuning(base, solve_rf_resonance(600.0, ratio, 1, base));
  p.omega_s = omega_s;
  return p;
}

HeterodyneSettings fast() {
  HeterodyneSettings s;
  s.samples_per_period = 64;
  return s;
}

}  // namespace

TEST_CASE("no signal field, no heterodyne signal") {
  const SystemParams p = tuned(0.5, 0.0);
  for (auto v : {ModelVariant::Effective, ModelVariant::EffectiveNo2nd}) {
    const auto t = synthesize(p, v, -6.6);
    for (double x : t.delta_T) CHECK(x == 0.0);
  }
}

TEST_CASE("trace layout and periodicity") {
  const SystemParams p = tuned(0.5, 1.0);
  const auto t = synthesize(p, ModelVariant::Effective, -6.6);
  CHECK(t.beat_period == doctest::Approx(1000.0));
  CHECK(t.t.size() == 2 * 256 + 1);
  CHECK(t.t.back() == doctest::Approx(2.0 * t.beat_period));
  CHECK(t.warnings.empty());
  for (std::size_t i = 1; i < t.t.size(); ++i) CHECK(t.t[i] > t.t[i - 1]);
  for (std::size_t i = 0; i + 256 < t.t.size(); ++i) CHECK(std::abs(t.delta_T[i + 256] - t.delta_T[i]) <= 1e-10);
}

TEST_CASE("amplitude of a synthetic cosine") {
  HeterodyneTrace t;
  t.beat_period = 2.0;
  for (int i = 0; i <= 400; ++i) {
    t.t.push_back(i * 0.01);
    t.delta_T.push_back(0.3 * std::cos(std::numbers::pi * i * 0.01) + 0.1);
  }
  CHECK(amplitude(t) == doctest::Approx(0.3).epsilon(1e-12));

  t.t.resize(150);
  t.delta_T.resize(150);
  CHECK_THROWS_AS(amplitude(t), WindowError);
}

TEST_CASE("operating point") {
  const SystemParams p = tuned(0.5, 1.0);
  const double op = default_operating_point(p);
  CHECK(std::abs(std::abs(op) - 6.6) < 1e-9);
  // First of the two mirror-image maxima.
  CHECK(op < 0.0);
}

TEST_CASE("amplitude scales with the signal field") {
  const double op = default_operating_point(tuned(0.5, 0.0));
  const double half = amplitude(synthesize(tuned(0.5, 0.5), ModelVariant::Effective, op, fast()));
  const double full = amplitude(synthesize(tuned(0.5, 1.0), ModelVariant::Effective, op, fast()));
  CHECK(half / full == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("second-order shift changes the heterodyne amplitude") {
  const SystemParams p = tuned(0.5, 1.0);
  const double op = default_operating_point(p);
  const double eff = amplitude(synthesize(p, ModelVariant::Effective, op, fast()));
  const double no2nd = amplitude(synthesize(p, ModelVariant::EffectiveNo2nd, op, fast()));
  CHECK(std::abs(eff / no2nd - 1.0) >= 0.3);
}

TEST_CASE("small-signal amplitude follows J_k times the Rabi slope") {
  // A = J_k(a/omega) Omega_s |d Im rho_21 / d Omega_eff| in the linear regime,
  // so A / |slope| compares geometries by their Bessel weights alone.
  auto weighted = [](double ratio) {
    const SystemParams local = tuned(ratio, 0.0);
    const double op = default_operating_point(local);
    const double jk = bessel::j(1, ratio);
    const double slope_eff = std::abs(rabi_slope(local, {}, true, op)) / jk;
    return amplitude(synthesize(tuned(ratio, 0.1), ModelVariant::Effective, op, fast())) / slope_eff;
  };
  const double ratio = weighted(1.8412) / weighted(0.5);
  CHECK(ratio == doctest::Approx(bessel::j(1, 1.8412) / bessel::j(1, 0.5)).epsilon(0.1));
}

TEST_CASE("small-signal linearity up to Omega_L/20") {
  const SystemParams local = tuned(0.5, 0.0);
  const double op = default_operating_point(local);
  const double slope = std::abs(rabi_slope(local, {}, true, op));
  for (double os = 0.25; os <= local.omega_L / 20.0 + 1e-12; os += 0.25) {
    const double a = amplitude(synthesize(tuned(0.5, os), ModelVariant::Effective, op, fast()));
    INFO("Omega_s = " << os);
    CHECK(std::abs(a / (os * slope) - 1.0) <= 0.05);
  }
}

TEST_CASE("preconditions and warnings") {
  SystemParams p = tuned(0.5, 1.0);
  CHECK_THROWS_AS(synthesize(p, ModelVariant::Original, 0.0), DomainError);
  HeterodyneSettings coarse;
  coarse.samples_per_period = 32;
  CHECK_THROWS_AS(synthesize(p, ModelVariant::Effective, 0.0, coarse), DomainError);
  p.delta_f = 0.1;
  CHECK(synthesize(p, ModelVariant::Effective, 0.0, fast()).warnings.size() == 1);
}
