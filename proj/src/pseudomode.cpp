#include "chshdyn/pseudomode.hpp"

#include <cmath>
#include <sstream>

#include "chshdyn/errors.hpp"
#include "chshdyn/simd/kernels.hpp"

namespace chshdyn {

namespace {

void check_cutoff(int cutoff) {
  if (cutoff < 1 || cutoff > kMaxFockCutoff) {
    throw ConfigError("Fock cutoff must lie in [1, " + std::to_string(kMaxFockCutoff) + "]");
  }
}

std::size_t full_dim(int cutoff) { return 4 * static_cast<std::size_t>(cutoff + 1); }

// Operators on the full space.
CMatrix lowering_qubit(int which, int cutoff) {
  const std::size_t d = full_dim(cutoff);
  CMatrix op = CMatrix::Zero(d, d);
  for (int other = 0; other <= 1; ++other) {
    for (int n = 0; n <= cutoff; ++n) {
      const std::size_t from = which == 1 ? basis_index(1, other, n, cutoff) : basis_index(other, 1, n, cutoff);
      const std::size_t to = which == 1 ? basis_index(0, other, n, cutoff) : basis_index(other, 0, n, cutoff);
      op(to, from) = 1.0;
    }
  }
  return op;
}

CMatrix annihilation(int cutoff) {
  const std::size_t d = full_dim(cutoff);
  CMatrix op = CMatrix::Zero(d, d);
  for (int q1 = 0; q1 <= 1; ++q1)
    for (int q2 = 0; q2 <= 1; ++q2)
      for (int n = 1; n <= cutoff; ++n)
        op(basis_index(q1, q2, n - 1, cutoff), basis_index(q1, q2, n, cutoff)) = std::sqrt(double(n));
  return op;
}

std::span<const cplx> flat(const CMatrix& m) { return {m.data(), static_cast<std::size_t>(m.size())}; }
std::span<cplx> flat(CMatrix& m) { return {m.data(), static_cast<std::size_t>(m.size())}; }

}  // namespace

std::size_t basis_index(int q1, int q2, int n, int cutoff) {
  const std::size_t qubits = 2 * static_cast<std::size_t>(1 - q1) + static_cast<std::size_t>(1 - q2);
  return qubits * static_cast<std::size_t>(cutoff + 1) + static_cast<std::size_t>(n);
}

FullState initial_state(const Amplitudes& qubits, int cutoff) {
  check_cutoff(cutoff);
  const Amplitudes a = Amplitudes::initial(qubits.c1, qubits.c2);
  std::vector<cplx> psi(full_dim(cutoff));
  psi[basis_index(1, 0, 0, cutoff)] = a.c1;
  psi[basis_index(0, 1, 0, cutoff)] = a.c2;
  return pure_state(psi, cutoff);
}

FullState pure_state(std::span<const cplx> psi, int cutoff) {
  check_cutoff(cutoff);
  const std::size_t d = full_dim(cutoff);
  if (psi.size() != d) throw ConfigError("pure_state: vector length must be 4(N+1)");
  Eigen::Map<const Eigen::VectorXcd> v(psi.data(), static_cast<Eigen::Index>(d));
  if (std::abs(v.squaredNorm() - 1.0) > 1e-12) throw ConfigError("pure_state: vector is not normalised");
  FullState s;
  s.cutoff = cutoff;
  s.rho = v * v.adjoint();
  return s;
}

void validate(const FullState& state, const FullStateTolerances& tol) {
  const CMatrix& rho = state.rho;
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  const double tr = rho.trace().real();
  std::ostringstream msg;
  if (herm > tol.hermiticity) {
    msg << "full state is not Hermitian (deviation " << herm << ")";
    throw NumericalError(msg.str());
  }
  if (std::abs(tr - 1.0) > tol.trace) {
    msg << "full state trace " << tr << " deviates from 1";
    throw NumericalError(msg.str());
  }
  const double lmin = min_eigenvalue(rho);
  if (lmin < tol.min_eigenvalue) {
    msg << "full state has negative eigenvalue " << lmin;
    throw NumericalError(msg.str());
  }
}

GeneratorSpec build_generator(const DerivedParams& params, const DecayConfig& decay, int cutoff) {
  check_cutoff(cutoff);
  if (decay.gamma1 < 0.0 || decay.gamma2 < 0.0) throw ConfigError("negative emission rate");

  GeneratorSpec g;
  g.cutoff = cutoff;
  g.cavityRate = params.lambda;
  g.qubitRates = {decay.gamma1, decay.gamma2};

  const CMatrix a = annihilation(cutoff);
  const CMatrix sm1 = lowering_qubit(1, cutoff);
  const CMatrix sm2 = lowering_qubit(2, cutoff);
  const CMatrix adag = a.adjoint();

  const CMatrix raise = params.R * (params.r1 * sm1.adjoint() * a + params.r2 * sm2.adjoint() * a);
  g.H = raise + raise.adjoint();

  const CMatrix damping = params.lambda * (adag * a) + 0.5 * decay.gamma1 * (sm1.adjoint() * sm1) +
                          0.5 * decay.gamma2 * (sm2.adjoint() * sm2);
  g.K = g.H - cplx(0.0, 1.0) * damping;
  g.Kdag = g.K.adjoint();

  auto add_jump = [&](const CMatrix& L, double rate) {
    if (rate > 0.0) g.jumps.push_back({L, L.adjoint(), rate});
  };
  add_jump(a, 2.0 * params.lambda);
  add_jump(sm1, decay.gamma1);
  add_jump(sm2, decay.gamma2);
  return g;
}

LindbladRhs::LindbladRhs(const GeneratorSpec& gen, double lambda)
    : gen_(&gen), scale_(1.0 / lambda), t1_(gen.dim() * gen.dim()), t2_(gen.dim() * gen.dim()) {}

void LindbladRhs::operator()(double /*tau*/, std::span<const cplx> rho, std::span<cplx> drho) {
  const std::size_t d = gen_->dim();
  if (rho.size() != d * d || drho.size() != d * d) throw ConfigError("rhs: dimension mismatch");

  // -i (K rho - rho K^dagger)
  simd::cmatmul(d, flat(gen_->K), rho, t1_);
  simd::cmatmul(d, rho, flat(gen_->Kdag), t2_);
  const cplx minus_i(0.0, -scale_);
  for (std::size_t k = 0; k < d * d; ++k) drho[k] = minus_i * (t1_[k] - t2_[k]);

  for (const LindbladTerm& j : gen_->jumps) {
    simd::cmatmul(d, flat(j.L), rho, t1_);
    simd::cmatmul(d, t1_, flat(j.Ldag), t2_);
    simd::axpy(j.rate * scale_, t2_, drho);
  }
}

CMatrix rhs(const FullState& state, const GeneratorSpec& gen) {
  if (state.dim() != gen.dim()) throw ConfigError("rhs: state and generator dimensions differ");
  CMatrix out(gen.dim(), gen.dim());
  LindbladRhs f(gen, 1.0);
  f(0.0, flat(state.rho), flat(out));
  return out;
}

FullState state_from_flat(std::span<const cplx> values, int cutoff) {
  const auto d = static_cast<Eigen::Index>(full_dim(cutoff));
  FullState s;
  s.cutoff = cutoff;
  s.rho = Eigen::Map<const CMatrix>(values.data(), d, d);
  s.rho = 0.5 * (s.rho + s.rho.adjoint()).eval();
  return s;
}

namespace {

void check_inputs(const FullState& initial, const GeneratorSpec& gen, double lambda) {
  if (initial.dim() != gen.dim() || initial.cutoff != gen.cutoff) {
    throw ConfigError("initial state and generator dimensions differ");
  }
  if (!(lambda > 0.0)) throw ConfigError("lambda must be > 0");
  validate(initial);
}

}  // namespace

std::vector<FullState> evolve(const FullState& initial, const GeneratorSpec& gen, double lambda,
                              std::span<const double> tauGrid, const IntegratorConfig& cfg) {
  check_inputs(initial, gen, lambda);
  if (tauGrid.empty()) return {};
  if (tauGrid.front() < 0.0) throw ConfigError("tau grid must start at >= 0");
  for (std::size_t i = 1; i < tauGrid.size(); ++i) {
    if (!(tauGrid[i] >= tauGrid[i - 1])) throw ConfigError("tau grid must be ascending");
  }

  std::vector<FullState> out;
  out.reserve(tauGrid.size());
  std::size_t next = 0;
  auto emit = [&](std::span<const cplx> values) {
    FullState s = state_from_flat(values, gen.cutoff);
    validate(s);
    out.push_back(std::move(s));
    ++next;
  };

  while (next < tauGrid.size() && tauGrid[next] == 0.0) emit(flat(initial.rho));
  if (next == tauGrid.size()) return out;

  LindbladRhs f(gen, lambda);
  DormandPrince45 stepper(std::ref(f), gen.dim() * gen.dim(), cfg);
  std::vector<cplx> buf(gen.dim() * gen.dim());
  stepper.integrate(
      0.0, flat(initial.rho), tauGrid.back(),
      [&](const AcceptedStep& step) {
        while (next < tauGrid.size() && tauGrid[next] <= step.t1) {
          if (tauGrid[next] == step.t1) {
            emit(step.y1);
          } else {
            hermite_interpolate(step, tauGrid[next], buf);
            emit(buf);
          }
        }
      },
      tauGrid);
  return out;
}

DenseTrajectory evolve_dense(const FullState& initial, const GeneratorSpec& gen, double lambda,
                             double tauEnd, const IntegratorConfig& cfg) {
  check_inputs(initial, gen, lambda);
  if (!(tauEnd > 0.0)) throw ConfigError("dense evolution needs tauEnd > 0");
  LindbladRhs f(gen, lambda);
  DormandPrince45 stepper(std::ref(f), gen.dim() * gen.dim(), cfg);
  DenseTrajectory traj(gen.dim() * gen.dim());
  stepper.integrate(0.0, flat(initial.rho), tauEnd, [&](const AcceptedStep& step) { traj.append(step); });
  return traj;
}

TwoQubitState reduce_qubits(const FullState& state) {
  const int n1 = state.cutoff + 1;
  TwoQubitState q;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx acc = 0.0;
      for (int n = 0; n < n1; ++n) acc += state.rho(i * n1 + n, j * n1 + n);
      q.rho(i, j) = acc;
    }
  return q;
}

double excitation_number(const FullState& state) {
  double total = 0.0;
  for (int q1 = 0; q1 <= 1; ++q1)
    for (int q2 = 0; q2 <= 1; ++q2)
      for (int n = 0; n <= state.cutoff; ++n) {
        const std::size_t k = basis_index(q1, q2, n, state.cutoff);
        total += (q1 + q2 + n) * state.rho(k, k).real();
      }
  return total;
}

}  // namespace chshdyn
