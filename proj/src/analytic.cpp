#include "chshdyn/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chshdyn/errors.hpp"
#include "chshdyn/simd/kernels.hpp"

namespace chshdyn {

namespace {
constexpr double kNormTol = 1e-12;
}

Amplitudes Amplitudes::initial(cplx c1, cplx c2) {
  const Amplitudes a{c1, c2};
  if (!std::isfinite(a.norm_sq()) || std::abs(a.norm_sq() - 1.0) > kNormTol) {
    throw ConfigError("initial state must be a normalised superposition of |10> and |01>");
  }
  return a;
}

double memory_amplitude(double tau, const DerivedParams& params) {
  const double lam2 = params.lambda * params.lambda;
  const double half = 0.5 * tau;
  if (std::abs(params.OmegaSq) < 1e-12 * lam2) {
    return std::exp(-half) * (1.0 + half);
  }
  // Omega / lambda, real (overdamped) or imaginary (oscillatory)
  const cplx w = std::sqrt(cplx(params.OmegaSq / lam2, 0.0));
  const cplx arg = w * half;
  const cplx e = std::exp(-half) * (std::cosh(arg) + std::sinh(arg) / w);
  if (std::abs(e.imag()) > 1e-12 * std::max(1.0, std::abs(e.real()))) {
    std::ostringstream msg;
    msg << "memory amplitude acquired an imaginary part " << e.imag() << " at tau=" << tau;
    throw NumericalError(msg.str());
  }
  return e.real();
}

InitialProjection project_initial(const DerivedParams& params, const Amplitudes& psi0) {
  return {params.r2 * psi0.c1 - params.r1 * psi0.c2, params.r1 * psi0.c1 + params.r2 * psi0.c2};
}

Amplitudes amplitudes_at(double tau, const InitialProjection& proj, const DerivedParams& params) {
  const double e = memory_amplitude(tau, params);
  return {params.r2 * proj.betaMinus + params.r1 * proj.betaPlus * e,
          -params.r1 * proj.betaMinus + params.r2 * proj.betaPlus * e};
}

TwoQubitState density_matrix(const Amplitudes& amps) {
  const double a = std::norm(amps.c1);
  const double b = std::norm(amps.c2);
  const double p = a + b;
  if (!std::isfinite(p) || p > 1.0 + kNormTol) {
    throw NumericalError("amplitude norm " + std::to_string(p) + " exceeds 1");
  }
  TwoQubitState s;
  cplx coh = amps.c1 * std::conj(amps.c2);
  double rho22 = a, rho33 = b, rho44 = 1.0 - p;
  if (p > 1.0) {
    // rounding excess: renormalise so that populations stay in [0, 1]
    rho22 = a / p;
    rho33 = b / p;
    coh /= p;
    rho44 = 0.0;
  }
  s.rho(1, 1) = rho22;
  s.rho(2, 2) = rho33;
  s.rho(1, 2) = coh;
  s.rho(2, 1) = std::conj(coh);
  s.rho(3, 3) = rho44;
  return s;
}

AnalyticModel::AnalyticModel(const DerivedParams& params, const Amplitudes& psi0)
    : params_(params), proj_(project_initial(params, psi0)) {}

Amplitudes AnalyticModel::amplitudes(double tau) const { return amplitudes_at(tau, proj_, params_); }

TwoQubitState AnalyticModel::state(double tau) const { return density_matrix(amplitudes(tau)); }

std::vector<double> AnalyticModel::bell_series(std::span<const double> taus) const {
  const std::size_t n = taus.size();
  std::vector<double> c1re(n), c1im(n), c2re(n), c2im(n), out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Amplitudes a = amplitudes(taus[i]);
    if (a.norm_sq() > 1.0 + kNormTol) {
      throw NumericalError("amplitude norm exceeds 1 at tau=" + std::to_string(taus[i]));
    }
    c1re[i] = a.c1.real();
    c1im[i] = a.c1.imag();
    c2re[i] = a.c2.real();
    c2im[i] = a.c2.imag();
  }
  simd::active().bell_single_excitation(n, c1re.data(), c1im.data(), c2re.data(), c2im.data(),
                                        out.data());
  return out;
}

}  // namespace chshdyn
