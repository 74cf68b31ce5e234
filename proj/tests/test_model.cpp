#include "doctest.h"

#include <cmath>
#include <cstring>

#include "chshdyn/model.hpp"

using namespace chshdyn;

TEST_CASE("symmetric couplings give r1 = r2 = 1/sqrt(2)") {
  const DerivedParams p = derive_params({1.0, 1.0}, {1.0, 2.0}, {});
  CHECK(p.r1 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(p.r2 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(p.alphaT == doctest::Approx(std::sqrt(2.0)));
  CHECK(p.R == doctest::Approx(2.0 * std::sqrt(2.0)));
}

TEST_CASE("lambda = gamma0 / 10 with S = 10 puts R at gamma0") {
  const Regime reg = params_from_regime(10.0, 0.4, 0.0);
  const DerivedParams p = derive_params(reg.coupling, reg.reservoir, reg.decay);
  CHECK(reg.reservoir.lambda == doctest::Approx(0.1 * reg.decay.gamma0));
  CHECK(p.R == doctest::Approx(10.0 * p.lambda).epsilon(1e-14));
  CHECK(p.R == doctest::Approx(reg.decay.gamma0).epsilon(1e-14));
}

TEST_CASE("OmegaSq is signed: S = 10 gives 1 - 400") {
  const Regime reg = params_from_regime(10.0, 0.3, 0.0);
  const DerivedParams p = derive_params(reg.coupling, reg.reservoir, reg.decay);
  CHECK(p.OmegaSq == doctest::Approx(-399.0).epsilon(1e-14));
  CHECK(p.S == p.R / p.lambda);
  CHECK(p.OmegaSq == p.lambda * p.lambda - 4.0 * p.R * p.R);
}

TEST_CASE("params_from_regime examples") {
  SUBCASE("zero decay") {
    const Regime reg = params_from_regime(10.0, 0.4, 0.0);
    CHECK(reg.decay.gamma1 == 0.0);
    CHECK(reg.decay.gamma2 == 0.0);
  }
  SUBCASE("gammaS = gamma0 / 50 is 0.2 lambda") {
    const Regime reg = params_from_regime(10.0, 0.4, 1.0 / 50.0);
    CHECK(reg.decay.gamma1 == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(reg.decay.gamma2 == reg.decay.gamma1);
  }
  SUBCASE("overdamped branch") {
    const Regime reg = params_from_regime(0.25, 1.0, 0.0);
    const DerivedParams p = derive_params(reg.coupling, reg.reservoir, reg.decay);
    CHECK(p.OmegaSq > 0.0);
    CHECK(p.OmegaSq == doctest::Approx(1.0 - 4.0 * 0.0625));
    CHECK(p.r2 == 0.0);
  }
}

TEST_CASE("regime round trip and normalisation of r1, r2") {
  for (int i = 0; i <= 100; ++i) {
    const double r1 = i / 100.0;
    for (double S : {0.1, 0.5, 2.0, 10.0, 37.5}) {
      const Regime reg = params_from_regime(S, r1, 0.05);
      const DerivedParams p = derive_params(reg.coupling, reg.reservoir, reg.decay);
      CHECK(std::abs(p.r1 - r1) < 1e-12);
      CHECK(std::abs(p.S - S) < 1e-12 * S);
      CHECK(std::abs(p.r1 * p.r1 + p.r2 * p.r2 - 1.0) < 1e-12);
      CHECK(reg.decay.gamma1 == doctest::Approx(0.05 * S));
    }
  }
}

TEST_CASE("derive_params is pure: bitwise-equal outputs") {
  const CouplingConfig c{0.37, 1.91};
  const ReservoirSpec r{0.7, 3.3};
  const DecayConfig d{0.1, 0.2, 5.0};
  const DerivedParams a = derive_params(c, r, d);
  const DerivedParams b = derive_params(c, r, d);
  CHECK(std::memcmp(&a, &b, sizeof a) == 0);
}

TEST_CASE("invalid configurations are rejected") {
  CHECK_THROWS_AS(derive_params({0.0, 0.0}, {1.0, 1.0}, {}), ConfigError);
  CHECK_THROWS_AS(derive_params({-1.0, 1.0}, {1.0, 1.0}, {}), ConfigError);
  CHECK_THROWS_AS(derive_params({1.0, 1.0}, {0.0, 1.0}, {}), ConfigError);
  CHECK_THROWS_AS(derive_params({1.0, 1.0}, {1.0, -1.0}, {}), ConfigError);
  CHECK_THROWS_AS(derive_params({1.0, 1.0}, {1.0, 1.0}, {-0.1, 0.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(derive_params({1.0, 1.0}, {1.0, 1.0}, {0.0, 0.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(params_from_regime(10.0, 1.5, 0.0), ConfigError);
  CHECK_THROWS_AS(params_from_regime(10.0, -0.1, 0.0), ConfigError);
  CHECK_THROWS_AS(params_from_regime(0.0, 0.5, 0.0), ConfigError);
  CHECK_THROWS_AS(params_from_regime(10.0, 0.5, -1.0), ConfigError);
}
