#include "doctest.h"

#include <cmath>
#include <vector>

#include "chshdyn/errors.hpp"
#include "chshdyn/integrator.hpp"

using namespace chshdyn;

namespace {

void decay_rhs(double, std::span<const cplx> y, std::span<cplx> dy) { dy[0] = -y[0]; }

// x'' = -x as (x, v), plus a complex rotation z' = i z
void oscillator_rhs(double, std::span<const cplx> y, std::span<cplx> dy) {
  dy[0] = y[1];
  dy[1] = -y[0];
  dy[2] = cplx(0.0, 1.0) * y[2];
}

}  // namespace

TEST_CASE("exponential decay to tolerance") {
  DormandPrince45 dp(decay_rhs, 1, IntegratorConfig{});
  std::vector<cplx> y0{1.0};
  cplx last{};
  double tlast = 0.0;
  dp.integrate(0.0, y0, 5.0, [&](const AcceptedStep& s) {
    CHECK(s.t1 > s.t0);
    CHECK(s.t1 - s.t0 <= 0.01 + 1e-15);
    CHECK(std::abs(s.y1[0] - std::exp(-s.t1)) < 1e-10);
    last = s.y1[0];
    tlast = s.t1;
  });
  CHECK(tlast == 5.0);
  CHECK(std::abs(last - std::exp(-5.0)) < 1e-11);
  CHECK(dp.accepted_steps() >= 500);
}

TEST_CASE("oscillator with a large step bound") {
  IntegratorConfig cfg;
  cfg.maxStep = 1.0;
  cfg.relTol = 1e-11;
  cfg.absTol = 1e-13;
  DormandPrince45 dp(oscillator_rhs, 3, cfg);
  std::vector<cplx> y0{1.0, 0.0, 1.0};
  std::vector<cplx> end(3);
  dp.integrate(0.0, y0, 20.0, [&](const AcceptedStep& s) { std::copy(s.y1.begin(), s.y1.end(), end.begin()); });
  CHECK(std::abs(end[0] - std::cos(20.0)) < 1e-8);
  CHECK(std::abs(end[1] + std::sin(20.0)) < 1e-8);
  CHECK(std::abs(end[2] - std::polar(1.0, 20.0)) < 1e-8);
  CHECK(dp.accepted_steps() < 2000);
}

TEST_CASE("stops land exactly on requested times") {
  DormandPrince45 dp(decay_rhs, 1, IntegratorConfig{.maxStep = 0.5});
  std::vector<cplx> y0{1.0};
  const std::vector<double> stops{0.123, 0.5, 1.0 / 3.0 + 0.4, 2.0};
  std::vector<double> ends;
  dp.integrate(0.0, y0, 2.0, [&](const AcceptedStep& s) { ends.push_back(s.t1); }, stops);
  for (double t : stops) CHECK(std::find(ends.begin(), ends.end(), t) != ends.end());
}

TEST_CASE("zero-length integration is a no-op") {
  DormandPrince45 dp(decay_rhs, 1, IntegratorConfig{});
  std::vector<cplx> y0{1.0};
  int calls = 0;
  dp.integrate(1.0, y0, 1.0, [&](const AcceptedStep&) { ++calls; });
  CHECK(calls == 0);
}

TEST_CASE("Hermite interpolation is exact for cubics") {
  // y = t^3 - t, y' = 3t^2 - 1 on [1, 2]
  auto y = [](double t) { return cplx(t * t * t - t, 0.5 * t * t * t); };
  auto f = [](double t) { return cplx(3 * t * t - 1, 1.5 * t * t); };
  std::vector<cplx> y0{y(1.0)}, f0{f(1.0)}, y1{y(2.0)}, f1{f(2.0)};
  const AcceptedStep s{1.0, 2.0, y0, f0, y1, f1};
  std::vector<cplx> out(1);
  for (double t : {1.0, 1.1, 1.5, 1.93, 2.0}) {
    hermite_interpolate(s, t, out);
    CHECK(std::abs(out[0] - y(t)) < 1e-13);
  }
}

TEST_CASE("dense trajectory reproduces the solution between steps") {
  DormandPrince45 dp(oscillator_rhs, 3, IntegratorConfig{});
  DenseTrajectory traj(3);
  std::vector<cplx> y0{1.0, 0.0, 1.0};
  dp.integrate(0.0, y0, 3.0, [&](const AcceptedStep& s) { traj.append(s); });
  CHECK(traj.t_begin() == 0.0);
  CHECK(traj.t_end() == 3.0);
  CHECK(traj.nodes() == dp.accepted_steps() + 1);
  for (int i = 0; i <= 997; ++i) {
    const double t = 3.0 * i / 997.0;
    const auto v = traj.evaluate(t);
    CHECK(std::abs(v[0] - std::cos(t)) < 1e-9);
    CHECK(std::abs(v[2] - std::polar(1.0, t)) < 1e-9);
  }
  CHECK_THROWS_AS(traj.evaluate(3.1), ConfigError);
  CHECK_THROWS_AS(traj.evaluate(-0.1), ConfigError);
}

TEST_CASE("step-size underflow reports the time reached") {
  // y' = y^2 blows up at t = 1
  auto blowup = [](double, std::span<const cplx> y, std::span<cplx> dy) { dy[0] = y[0] * y[0]; };
  DormandPrince45 dp(blowup, 1, IntegratorConfig{.maxStep = 0.1});
  std::vector<cplx> y0{1.0};
  try {
    dp.integrate(0.0, y0, 2.0, [](const AcceptedStep&) {});
    FAIL("expected an IntegrationError");
  } catch (const IntegrationError& e) {
    CHECK(e.tau_reached() > 0.9);
    CHECK(e.tau_reached() <= 1.0);
  }
}

TEST_CASE("configuration validation") {
  CHECK_NOTHROW(IntegratorConfig{}.validate());
  CHECK_THROWS_AS(IntegratorConfig{.relTol = 1e-15}.validate(), ConfigError);
  CHECK_THROWS_AS(IntegratorConfig{.absTol = 0.0}.validate(), ConfigError);
  CHECK_THROWS_AS(IntegratorConfig{.maxStep = -1.0}.validate(), ConfigError);
  CHECK_THROWS_AS(IntegratorConfig{.initialStep = std::nan("")}.validate(), ConfigError);
  CHECK_THROWS_AS(DormandPrince45(decay_rhs, 1, IntegratorConfig{.relTol = 0.0}), ConfigError);

  DormandPrince45 dp(decay_rhs, 1, IntegratorConfig{});
  std::vector<cplx> wrong{1.0, 2.0};
  CHECK_THROWS_AS(dp.integrate(0.0, wrong, 1.0, [](const AcceptedStep&) {}), ConfigError);
  std::vector<cplx> y0{1.0};
  CHECK_THROWS_AS(dp.integrate(1.0, y0, 0.0, [](const AcceptedStep&) {}), ConfigError);
}
