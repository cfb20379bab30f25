#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "rydmix/error.hpp"
#include "rydmix/spectroscopy.hpp"

using namespace rydmix;
using namespace rydmix::spectroscopy;

namespace {

SystemParams tuned_defaults() {
  const SystemParams base;
  return apply_tuning(base, solve_rf_resonance(600.0, 0.5, 1, base));
}

double peak(const SpectrumTrace& t) {
  double m = 0.0;
  for (const auto& p : t.points) m = std::max(m, p.value);
  return m;
}

double max_deviation(const SpectrumTrace& a, const SpectrumTrace& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.points.size(); ++i) d = std::max(d, std::abs(a.points[i].value - b.points[i].value));
  return d;
}

// Largest |v(c + x) - v(c - x)| with c the centre of mass, using linear
// interpolation on a uniform grid.
double asymmetry(const SpectrumTrace& t) {
  double m0 = 0.0;
  double m1 = 0.0;
  for (const auto& p : t.points) {
    m0 += p.value;
    m1 += p.value * p.delta_p;
  }
  const double c = m1 / m0;
  const double lo = t.points.front().delta_p;
  const double step = t.points[1].delta_p - lo;
  auto at = [&](double x) {
    const auto i = std::min(t.points.size() - 2, static_cast<std::size_t>((x - lo) / step));
    const double f = (x - t.points[i].delta_p) / step;
    return (1.0 - f) * t.points[i].value + f * t.points[i + 1].value;
  };
  double worst = 0.0;
  for (const auto& p : t.points) {
    const double mirror = 2.0 * c - p.delta_p;
    if (mirror < lo || mirror > t.points.back().delta_p) continue;
    worst = std::max(worst, std::abs(at(mirror) - p.value));
  }
  return worst;
}

SpectrumTrace synthetic(const std::vector<double>& grid, std::initializer_list<double> centres) {
  SpectrumTrace t;
  for (double x : grid) {
    double v = 0.0;
    for (double c : centres) v += 1.0 / (1.0 + (x - c) * (x - c));
    t.points.push_back({x, v});
  }
  return t;
}

}  // namespace

TEST_CASE("grids") {
  const auto g = default_grid();
  CHECK(g.size() == 401);
  CHECK(g.front() == -30.0);
  CHECK(g.back() == 30.0);
  CHECK(g[200] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 1), DomainError);
}

TEST_CASE("sweep preconditions") {
  const SystemParams p;
  CHECK_THROWS_AS(sweep_spectrum(p, ModelVariant::Effective, {0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(sweep_spectrum(p, ModelVariant::Effective, {0.0, 2.0, 1.0}), DomainError);
}

TEST_CASE("effective spectrum is symmetric at the tuned point") {
  const SystemParams p = tuned_defaults();
  const auto eff = sweep_spectrum(p, ModelVariant::Effective, default_grid());
  CHECK(eff.points.size() == 401);
  CHECK(eff.variant == ModelVariant::Effective);
  CHECK(asymmetry(eff) <= 0.02 * peak(eff));
  CHECK(peak(eff) > 0.0);

  const auto no2nd = sweep_spectrum(p, ModelVariant::EffectiveNo2nd, default_grid());
  CHECK(asymmetry(no2nd) > 0.2 * peak(no2nd));
  CHECK(max_deviation(eff, no2nd) >= 0.2 * peak(eff));
}

TEST_CASE("three-level limit shows one transparency dip") {
  SystemParams p;
  p.omega_L = 0.0;
  p.delta_c = p.A;
  const auto t = sweep_spectrum(p, ModelVariant::Effective, linear_grid(-30.0, 30.0, 401));
  int minima = 0;
  for (std::size_t i = 1; i + 1 < t.points.size(); ++i) {
    if (t.points[i].value < t.points[i - 1].value && t.points[i].value <= t.points[i + 1].value) {
      ++minima;
      CHECK(std::abs(t.points[i].delta_p) < 1e-9);
    }
  }
  CHECK(minima == 1);
}

TEST_CASE("AT splitting") {
  const auto grid = linear_grid(-30.0, 30.0, 601);
  const auto pair = extract_at_splitting(synthetic(grid, {-5.0, 5.0}));
  CHECK(pair.splitting == doctest::Approx(10.0).epsilon(0.001));
  CHECK(pair.peaks[0] == doctest::Approx(-5.0).epsilon(0.002));

  try {
    extract_at_splitting(synthetic(grid, {0.0}));
    FAIL("expected PeakCountError");
  } catch (const PeakCountError& e) {
    CHECK(e.found() == 1);
  }

  SystemParams p = tuned_defaults();
  p.decay.gamma[1] = 0.5;
  const auto trace = sweep_spectrum(p, ModelVariant::Effective, linear_grid(-30.0, 30.0, 1201));
  const auto at = extract_at_splitting(trace, Polarity::Transparency);
  CHECK(std::abs(at.splitting - 40.0 * 0.242268457674873886) <= 0.3);
  // Im rho_21 itself has three absorption maxima, not two.
  CHECK_THROWS_AS(extract_at_splitting(trace, Polarity::Maxima), PeakCountError);
}

TEST_CASE("splitting grows with the MW Rabi frequency") {
  const SystemParams base = tuned_defaults();
  double previous = 0.0;
  for (double om = 20.0; om <= 80.0; om += 10.0) {
    SystemParams p = base;
    p.omega_L = om;
    const auto t = sweep_spectrum(p, ModelVariant::Effective, linear_grid(-30.0, 30.0, 601));
    const double s = extract_at_splitting(t, Polarity::Transparency).splitting;
    CHECK(s >= previous);
    previous = s;
  }
}

TEST_CASE("time-dependent variants agree with the effective model") {
  const SystemParams p = tuned_defaults();
  const auto grid = linear_grid(-30.0, 30.0, 41);
  const auto eff = sweep_spectrum(p, ModelVariant::Effective, grid);
  const auto orig = sweep_spectrum(p, ModelVariant::Original, grid);
  const auto rot = sweep_spectrum(p, ModelVariant::Rotated, grid);
  CHECK(max_deviation(eff, orig) <= 0.05 * peak(eff));
  CHECK(max_deviation(eff, rot) <= 0.05 * peak(eff));
  // Both time-dependent models describe the same dynamics.
  CHECK(max_deviation(orig, rot) <= 1e-6);
}

TEST_CASE("burn-in averaging reproduces the periodic solution") {
  const SystemParams p = tuned_defaults();
  SweepSettings periodic;
  periodic.steps_per_period = 256;
  SweepSettings burn = periodic;
  burn.method = PropagationMethod::BurnIn;
  burn.burn_in_us = 4.0;
  burn.averaging_periods = 20;
  for (double dp : {-7.5, 0.0, 4.0}) {
    SystemParams q = p;
    q.delta_p = dp;
    const double a = probe_absorption(q, ModelVariant::Original, periodic);
    const double b = probe_absorption(q, ModelVariant::Original, burn);
    CHECK(std::abs(a - b) < 1e-7);
  }
}
