#pragma once

// Parameter records for two qubits coupled to a common Lorentzian (lossy
// cavity) reservoir. All rates are expressed in units of the spectral width
// lambda; time is always scaled, tau = lambda * t.

#include "chshdyn/errors.hpp"

namespace chshdyn {

/// Dimensionless qubit-environment couplings.
struct CouplingConfig {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
};

/// Lorentzian spectral density: width `lambda` and height parameter `W`.
struct ReservoirSpec {
  double lambda = 1.0;
  double W = 0.0;
};

/// Independent spontaneous emission rates plus the Markovian reporting unit gamma0.
/// gamma0 never enters the dynamics; it only converts reported ratios.
struct DecayConfig {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma0 = 1.0;
};

struct DerivedParams {
  double r1 = 0.0;
  double r2 = 0.0;
  double alphaT = 0.0;
  double R = 0.0;        ///< vacuum Rabi frequency, alphaT * W
  double S = 0.0;        ///< coupling strength R / lambda
  double OmegaSq = 0.0;  ///< lambda^2 - 4 R^2, signed
  double lambda = 1.0;
};

/// Validates the three records and computes the derived quantities.
/// Throws ConfigError on alphaT == 0, non-positive lambda/gamma0 or negative rates.
DerivedParams derive_params(const CouplingConfig& coupling,
                            const ReservoirSpec& reservoir,
                            const DecayConfig& decay);

struct Regime {
  CouplingConfig coupling;
  ReservoirSpec reservoir;
  DecayConfig decay;
};

/// Builds a configuration from (S, r1, gammaS/gamma0) with lambda = 1 and
/// gamma0 = S * lambda. Both qubits get the same emission rate.
Regime params_from_regime(double S, double r1, double gammaS_over_gamma0);

}  // namespace chshdyn
