#pragma once

// Exact single-excitation dynamics in a common Lorentzian reservoir. The
// sub-radiant combination psi_- is decoupled and frozen; the super-radiant
// one psi_+ decays with the memory kernel E(tau).

#include <span>
#include <vector>

#include "chshdyn/model.hpp"
#include "chshdyn/states.hpp"

namespace chshdyn {

/// Amplitudes of |10> and |01> in the single-excitation sector.
struct Amplitudes {
  cplx c1{};
  cplx c2{};

  /// A normalised pure initial state in span{|10>, |01>}; anything else is rejected.
  static Amplitudes initial(cplx c1, cplx c2);
  static Amplitudes excited_first() { return {1.0, 0.0}; }   // |10>
  static Amplitudes excited_second() { return {0.0, 1.0}; }  // |01>
  static Amplitudes sub_radiant(const DerivedParams& p) { return {p.r2, -p.r1}; }
  static Amplitudes super_radiant(const DerivedParams& p) { return {p.r1, p.r2}; }

  double norm_sq() const { return std::norm(c1) + std::norm(c2); }
};

struct InitialProjection {
  cplx betaMinus{};  ///< <psi_-|psi0>
  cplx betaPlus{};   ///< <psi_+|psi0>
};

/// E(tau). Valid for overdamped, critically damped and oscillatory regimes.
double memory_amplitude(double tau, const DerivedParams& params);

InitialProjection project_initial(const DerivedParams& params, const Amplitudes& psi0);

Amplitudes amplitudes_at(double tau, const InitialProjection& proj, const DerivedParams& params);

/// Two-qubit state of a single-excitation wavefunction with the remaining
/// weight in |00>. Throws NumericalError if |c1|^2 + |c2|^2 > 1 + 1e-12.
TwoQubitState density_matrix(const Amplitudes& amps);

/// Convenience wrapper over the free functions for one parameter point.
class AnalyticModel {
 public:
  AnalyticModel(const DerivedParams& params, const Amplitudes& psi0);

  Amplitudes amplitudes(double tau) const;
  TwoQubitState state(double tau) const;

  /// Maximal CHSH value at each tau, computed with the batched kernel.
  std::vector<double> bell_series(std::span<const double> taus) const;

  const DerivedParams& params() const { return params_; }

 private:
  DerivedParams params_;
  InitialProjection proj_;
};

}  // namespace chshdyn
