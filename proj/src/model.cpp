#include "chshdyn/model.hpp"

#include <cmath>
#include <string>

namespace chshdyn {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

DerivedParams derive_params(const CouplingConfig& coupling,
                            const ReservoirSpec& reservoir,
                            const DecayConfig& decay) {
  require(finite_nonneg(coupling.alpha1) && finite_nonneg(coupling.alpha2),
          "couplings alpha1, alpha2 must be finite and >= 0");
  require(std::isfinite(reservoir.lambda) && reservoir.lambda > 0.0, "lambda must be > 0");
  require(finite_nonneg(reservoir.W), "W must be >= 0");
  require(finite_nonneg(decay.gamma1) && finite_nonneg(decay.gamma2),
          "spontaneous emission rates must be >= 0");
  require(std::isfinite(decay.gamma0) && decay.gamma0 > 0.0, "gamma0 must be > 0");

  DerivedParams p;
  p.alphaT = std::hypot(coupling.alpha1, coupling.alpha2);
  require(p.alphaT > 0.0, "alpha1 and alpha2 cannot both be zero");
  p.r1 = coupling.alpha1 / p.alphaT;
  p.r2 = coupling.alpha2 / p.alphaT;
  p.lambda = reservoir.lambda;
  p.R = p.alphaT * reservoir.W;
  p.S = p.R / p.lambda;
  p.OmegaSq = p.lambda * p.lambda - 4.0 * p.R * p.R;
  return p;
}

Regime params_from_regime(double S, double r1, double gammaS_over_gamma0) {
  require(std::isfinite(S) && S > 0.0, "S must be > 0");
  require(std::isfinite(r1) && r1 >= 0.0 && r1 <= 1.0, "r1 must lie in [0, 1]");
  require(finite_nonneg(gammaS_over_gamma0), "gammaS/gamma0 must be >= 0");

  Regime regime;
  regime.coupling.alpha1 = r1;
  regime.coupling.alpha2 = std::sqrt((1.0 - r1) * (1.0 + r1));
  const double alphaT = std::hypot(regime.coupling.alpha1, regime.coupling.alpha2);

  regime.reservoir.lambda = 1.0;
  const double R = S * regime.reservoir.lambda;
  regime.reservoir.W = R / alphaT;

  regime.decay.gamma0 = S * regime.reservoir.lambda;
  regime.decay.gamma1 = gammaS_over_gamma0 * regime.decay.gamma0;
  regime.decay.gamma2 = regime.decay.gamma1;
  return regime;
}

}  // namespace chshdyn
