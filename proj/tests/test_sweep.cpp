#include "doctest.h"

#include <cmath>
#include <cstring>
#include <vector>

#include "chshdyn/bell.hpp"
#include "chshdyn/sweep.hpp"

using namespace chshdyn;

namespace {

const double kSymmetric = 1.0 / std::sqrt(2.0);

SweepSetup lindblad_setup(double ratio = 0.0) {
  SweepSetup s;
  s.model = Model::lindblad;
  s.gammaS_over_gamma0 = ratio;
  return s;
}

ViolationIntervals intervals_at(const SweepSetup& setup, double r1, const SweepGrid& grid = {}) {
  const auto taus = grid.taus();
  const auto b = bell_series(setup, r1, taus);
  return violation_intervals(taus, b, continuous_bell(setup, r1, grid.tauMax));
}

DerivedParams regime(double S, double r1) {
  const Regime reg = params_from_regime(S, r1, 0.0);
  return derive_params(reg.coupling, reg.reservoir, reg.decay);
}

}  // namespace

TEST_CASE("grid construction and validation") {
  const SweepGrid g;
  CHECK(g.r1Values.size() == 99);
  CHECK(g.r1Values.front() == 0.01);
  CHECK(g.r1Values.back() == 0.99);
  const auto taus = g.taus();
  CHECK(taus.size() == 2001);
  CHECK(taus.front() == 0.0);
  CHECK(taus.back() == 20.0);
  CHECK(SweepGrid::uniform_r1(0.05, 0.95, 19)[10] == doctest::Approx(0.55).epsilon(1e-15));

  CHECK_THROWS_AS((SweepGrid{20.0, 1, {0.5}}).validate(), ConfigError);
  CHECK_THROWS_AS((SweepGrid{0.0, 10, {0.5}}).validate(), ConfigError);
  CHECK_THROWS_AS((SweepGrid{20.0, 10, {0.0, 0.5}}).validate(), ConfigError);
  CHECK_THROWS_AS((SweepGrid{20.0, 10, {0.5, 1.0}}).validate(), ConfigError);
  CHECK_THROWS_AS((SweepGrid{20.0, 10, {0.5, 0.4}}).validate(), ConfigError);
  CHECK_THROWS_AS((SweepGrid{20.0, 10, {}}).validate(), ConfigError);
  CHECK(parse_model("lindblad") == Model::lindblad);
  CHECK(model_name(Model::analytic) == "analytic");
  CHECK_THROWS_AS(parse_model("markov"), ConfigError);
}

TEST_CASE("symmetric coupling creates no violation") {
  const SweepSetup setup;
  const SweepGrid grid{20.0, 2000, {kSymmetric}};
  for (const SweepRow& r : sweep(setup, grid, 1)) {
    CHECK(r.B <= 2.0 + 1e-9);
    CHECK(r.violation == std::max(0.0, r.B - 2.0));
  }
}

TEST_CASE("violation region in r1 at strong coupling") {
  SweepGrid grid;
  grid.r1Values = SweepGrid::uniform_r1(0.6, 0.99, 40);
  double lowBand = 0.0, highBand = 0.0, tail = 0.0;
  for (const SweepRow& r : sweep(SweepSetup{}, grid, 1)) {
    if (r.r1 < 0.885) lowBand = std::max(lowBand, r.violation);
    else if (r.r1 < 0.955) highBand = std::max(highBand, r.violation);
    else tail = std::max(tail, r.violation);
  }
  // 0.6 <= r1 < 0.885: no violation anywhere
  CHECK(lowBand == 0.0);
  // a narrow band near r1 = 0.93 violates at the first swing of E
  CHECK(highBand > 0.1);
  CHECK(tail == 0.0);
  CHECK(intervals_at(SweepSetup{}, 0.4).size() >= 1);
}

TEST_CASE("Lindblad model matches the analytic model without emission") {
  const SweepGrid grid{20.0, 2000, {0.2, 0.4, 0.6}};
  const auto a = sweep(SweepSetup{}, grid, 1);
  const auto l = sweep(lindblad_setup(), grid, 1);
  REQUIRE(a.size() == l.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i].B - l[i].B));
  CHECK(worst <= 1e-6);
}

TEST_CASE("analytic model refuses spontaneous emission") {
  SweepSetup s;
  s.gammaS_over_gamma0 = 0.02;
  CHECK_THROWS_AS(sweep(s, SweepGrid{20.0, 10, {0.4}}, 1), ConfigError);
}

TEST_CASE("violation_intervals examples") {
  const std::vector<double> taus{0.0, 1.0, 2.0, 3.0, 4.0};
  SUBCASE("constant above Tsirelson-level violation") {
    const std::vector<double> b(5, 2.0 * std::sqrt(2.0));
    const auto iv = violation_intervals(taus, b);
    REQUIRE(iv.size() == 1);
    CHECK(iv.intervals[0] == std::pair{0.0, 4.0});
  }
  SUBCASE("constant below") {
    CHECK(violation_intervals(taus, std::vector<double>(5, 1.0)).empty());
  }
  SUBCASE("exactly two is not a violation") {
    CHECK(violation_intervals(taus, std::vector<double>(5, 2.0)).empty());
  }
  SUBCASE("linear interpolation of crossings") {
    const std::vector<double> b{1.0, 3.0, 3.0, 1.0, 1.0};
    const auto iv = violation_intervals(taus, b);
    REQUIRE(iv.size() == 1);
    CHECK(iv.intervals[0].first == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(iv.intervals[0].second == doctest::Approx(2.5).epsilon(1e-8));
  }
  SUBCASE("bisection on a continuous model") {
    auto model = [](double t) { return 2.0 + std::sin(t); };  // > 2 on (0, pi)
    std::vector<double> b;
    for (double t : taus) b.push_back(model(t));
    const auto iv = violation_intervals(taus, b, model);
    REQUIRE(iv.size() == 1);
    CHECK(std::abs(iv.intervals[0].first) < 1e-6);
    CHECK(std::abs(iv.intervals[0].second - M_PI) < 1e-6);
  }
  SUBCASE("slivers narrower than the resolution are dropped") {
    auto model = [](double t) { return std::abs(t - 2.0) < 2e-7 ? 2.5 : 1.0; };
    const std::vector<double> b{1.0, 1.0, 2.5, 1.0, 1.0};
    CHECK(violation_intervals(taus, b, model).empty());
  }
  SUBCASE("length mismatch") {
    CHECK_THROWS_AS(violation_intervals(taus, std::vector<double>(3, 1.0)), ConfigError);
  }
}

TEST_CASE("count_revivals") {
  CHECK(count_revivals({}) == 0);
  CHECK(count_revivals({{{0.1, 0.2}}}) == 0);
  CHECK(count_revivals({{{0.1, 0.2}, {0.3, 0.4}, {0.5, 0.6}}}) == 2);
}

TEST_CASE("sudden violation with repeated revivals, damped by emission") {
  const auto ideal = intervals_at(SweepSetup{}, 0.4);
  REQUIRE(ideal.size() >= 4);
  CHECK(ideal.intervals.front().first > 0.0);
  CHECK(ideal.intervals.back().second < 20.0);
  for (std::size_t i = 1; i < ideal.size(); ++i) {
    CHECK(ideal.intervals[i].first > ideal.intervals[i - 1].second);
  }
  const auto damped = intervals_at(lindblad_setup(1.0 / 50.0), 0.4);
  CHECK(static_cast<int>(ideal.size()) - static_cast<int>(damped.size()) >= 3);
}

TEST_CASE("max_violation") {
  SUBCASE("single row") {
    const std::vector<SweepRow> rows{{1.5, 0.3, 2.2, 0.2}};
    const MaxViolation m = max_violation(rows);
    CHECK(m.B == 2.2);
    CHECK(m.tau == 1.5);
    CHECK(m.r1 == 0.3);
  }
  SUBCASE("ties go to the smaller tau, then the smaller r1") {
    const std::vector<SweepRow> rows{{2.0, 0.1, 2.5, 0.5}, {1.0, 0.6, 2.5, 0.5}, {1.0, 0.2, 2.5, 0.5}};
    const MaxViolation m = max_violation(rows);
    CHECK(m.tau == 1.0);
    CHECK(m.r1 == 0.2);
  }
  SUBCASE("empty input") { CHECK_THROWS_AS(max_violation({}), ConfigError); }
  SUBCASE("strong coupling peaks at the first minimum of the memory kernel") {
    const auto rows = sweep(SweepSetup{}, SweepGrid{}, 1);
    const MaxViolation m = max_violation(rows);
    CHECK(std::abs(m.tau - 2.0 * M_PI / std::sqrt(399.0)) <= 0.05);
    CHECK(m.r1 >= 0.3);
    CHECK(m.r1 <= 0.5);
    CHECK(m.B > 2.0);
    CHECK(m.B <= 2.0 * std::sqrt(2.0) + 1e-9);
  }
}

TEST_CASE("rows agree with states rebuilt from scratch") {
  const SweepGrid grid{20.0, 400, {0.15, 0.4, 0.55}};
  for (const SweepRow& r : sweep(SweepSetup{}, grid, 1)) {
    const AnalyticModel m(regime(10.0, r.r1), Amplitudes::excited_first());
    CHECK(std::abs(r.violation - violation_margin(m.state(r.tau))) <= 1e-12);
  }
}

TEST_CASE("qubit relabelling symmetry") {
  const SweepGrid grid{20.0, 2000, {0.2, 0.4, 0.5}};
  const auto taus = grid.taus();
  SweepSetup swapped;
  swapped.psi0 = Amplitudes::excited_second();
  for (double r1 : grid.r1Values) {
    const double r2 = std::sqrt((1.0 - r1) * (1.0 + r1));
    const auto a = bell_series(SweepSetup{}, r1, taus);
    const auto b = bell_series(swapped, r2, taus);
    for (std::size_t i = 0; i < taus.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-10);
  }
}

TEST_CASE("interval boundaries are stable under grid refinement") {
  for (const SweepSetup& setup : {SweepSetup{}, lindblad_setup(1.0 / 50.0)}) {
    for (double r1 : {0.3, 0.4, 0.5}) {
      const auto coarse = intervals_at(setup, r1, SweepGrid{20.0, 2000, {r1}});
      const auto fine = intervals_at(setup, r1, SweepGrid{20.0, 4000, {r1}});
      REQUIRE(coarse.size() == fine.size());
      for (std::size_t i = 0; i < coarse.size(); ++i) {
        CHECK(std::abs(coarse.intervals[i].first - fine.intervals[i].first) < 2.0 * 20.0 / 2000);
        CHECK(std::abs(coarse.intervals[i].second - fine.intervals[i].second) < 2.0 * 20.0 / 2000);
      }
    }
  }
}

TEST_CASE("results do not depend on the worker count") {
  const SweepGrid grid{20.0, 500, SweepGrid::uniform_r1(0.1, 0.9, 9)};
  const auto one = sweep(lindblad_setup(0.02), grid, 1);
  const auto three = sweep(lindblad_setup(0.02), grid, 3);
  REQUIRE(one.size() == three.size());
  CHECK(std::memcmp(one.data(), three.data(), one.size() * sizeof(SweepRow)) == 0);
}

TEST_CASE("maximal violation is non-increasing in the emission rate") {
  const SweepGrid grid{20.0, 2000, SweepGrid::uniform_r1(0.05, 0.95, 10)};
  double prev = std::numeric_limits<double>::infinity();
  for (double ratio : {0.0, 0.02, 0.111, 0.2}) {
    const double v = grid_max_violation(SweepSetup{}, grid, ratio);
    if (ratio == 0.0) CHECK(v > 0.0);
    CHECK(v <= prev + kViolationTolerance);
    prev = v;
  }
}

TEST_CASE("threshold search inputs") {
  const SweepGrid grid{20.0, 400, {0.4}};
  CHECK_THROWS_AS(find_threshold(SweepSetup{}, grid, 0.0, 0.0), ConfigError);
  CHECK_THROWS_AS(find_threshold(SweepSetup{}, grid, 0.2, 0.1), ConfigError);
  CHECK_THROWS_AS(find_threshold(SweepSetup{}, grid, 0.0, 0.5, 0.0), ConfigError);
  // both ends violate: no sign change
  CHECK_THROWS_AS(find_threshold(SweepSetup{}, grid, 0.0, 0.001), ConfigError);
}

TEST_CASE("threshold on a single coupling converges to a bracketed root") {
  const SweepGrid grid{20.0, 1000, {0.4}};
  const ThresholdResult t = find_threshold(SweepSetup{}, grid, 0.0, 0.5, 1e-2);
  CHECK(t.bracketWidthOverGamma0 < 1e-2);
  CHECK(t.gammaStar == doctest::Approx(t.gammaStarOverGamma0 * 10.0));
  CHECK(t.samples.size() >= 2);
  CHECK(grid_max_violation(SweepSetup{}, grid, t.gammaStarOverGamma0 - t.bracketWidthOverGamma0) > 0.0);
  CHECK(grid_max_violation(SweepSetup{}, grid, t.gammaStarOverGamma0 + t.bracketWidthOverGamma0) <=
        kViolationTolerance);
}
