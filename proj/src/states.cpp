#include "chshdyn/states.hpp"

#include <cmath>
#include <string>

#include "chshdyn/errors.hpp"

namespace chshdyn {

void validate(const TwoQubitState& state, const StateTolerances& tol) {
  const Eigen::Matrix4cd& rho = state.rho;
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.hermiticity) {
    throw NumericalError("two-qubit state is not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > tol.trace) {
    throw NumericalError("two-qubit state trace " + std::to_string(tr) + " != 1");
  }
  const double lmin = min_eigenvalue(rho);
  if (lmin < tol.min_eigenvalue) {
    throw NumericalError("two-qubit state has negative eigenvalue " + std::to_string(lmin));
  }
}

double min_eigenvalue(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Eigen::MatrixXcd d = a - b;
  const Eigen::MatrixXcd h = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace chshdyn
