#pragma once

// Two qubits coupled to one damped cavity mode (the pseudomode of the
// Lorentzian reservoir) plus independent spontaneous emission. The density
// matrix lives on qubit1 x qubit2 x Fock(0..N), D = 4(N+1), and is
// propagated as a full matrix in scaled time tau = lambda t.

#include <array>
#include <span>
#include <vector>

#include "chshdyn/analytic.hpp"
#include "chshdyn/integrator.hpp"
#include "chshdyn/model.hpp"
#include "chshdyn/states.hpp"

namespace chshdyn {

using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr int kMaxFockCutoff = 4;

/// Row index of |q1, q2, n> (q = 1 excited). Qubit order matches TwoQubitState.
std::size_t basis_index(int q1, int q2, int n, int cutoff);

struct FullState {
  CMatrix rho;
  int cutoff = 1;

  std::size_t dim() const { return static_cast<std::size_t>(rho.rows()); }
};

/// (c1|10> + c2|01>) x |0>.
FullState initial_state(const Amplitudes& qubits, int cutoff);

/// |psi><psi| for an arbitrary normalised vector of length 4(N+1).
FullState pure_state(std::span<const cplx> psi, int cutoff);

struct FullStateTolerances {
  double hermiticity = 1e-10;
  double trace = 1e-9;
  double min_eigenvalue = -1e-8;
};

void validate(const FullState& state, const FullStateTolerances& tol = {});

struct LindbladTerm {
  CMatrix L;
  CMatrix Ldag;
  double rate = 0.0;  ///< coefficient of L rho L^dagger
};

struct GeneratorSpec {
  CMatrix H;
  double cavityRate = 0.0;
  std::array<double, 2> qubitRates{0.0, 0.0};
  int cutoff = 1;

  /// H - i (lambda a^+a + gamma1/2 s+s-(1) + gamma2/2 s+s-(2)) and its adjoint.
  CMatrix K;
  CMatrix Kdag;
  std::vector<LindbladTerm> jumps;

  std::size_t dim() const { return static_cast<std::size_t>(H.rows()); }
};

/// Throws ConfigError for cutoff < 1 or > kMaxFockCutoff.
GeneratorSpec build_generator(const DerivedParams& params, const DecayConfig& decay, int cutoff);

/// d rho / dt in physical time.
CMatrix rhs(const FullState& state, const GeneratorSpec& gen);

/// Allocation-free right-hand side in scaled time, for the integrator.
class LindbladRhs {
 public:
  LindbladRhs(const GeneratorSpec& gen, double lambda);
  void operator()(double tau, std::span<const cplx> rho, std::span<cplx> drho);

 private:
  const GeneratorSpec* gen_;
  double scale_;
  std::vector<cplx> t1_, t2_;
};

/// States at every tau in the ascending grid (tau[0] >= 0), each symmetrised
/// and checked against the FullState invariants.
std::vector<FullState> evolve(const FullState& initial, const GeneratorSpec& gen, double lambda,
                              std::span<const double> tauGrid, const IntegratorConfig& cfg);

/// Integrates to tauEnd and keeps the dense output.
DenseTrajectory evolve_dense(const FullState& initial, const GeneratorSpec& gen, double lambda,
                             double tauEnd, const IntegratorConfig& cfg);

FullState state_from_flat(std::span<const cplx> flat, int cutoff);

TwoQubitState reduce_qubits(const FullState& state);

double excitation_number(const FullState& state);

}  // namespace chshdyn
