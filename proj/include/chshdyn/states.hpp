#pragma once

#include <complex>

#include <Eigen/Dense>

namespace chshdyn {

using cplx = std::complex<double>;

/// Two-qubit density matrix in the basis {|11>, |10>, |01>, |00>}
/// (qubit 1 first, 1 = excited).
struct TwoQubitState {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
};

struct StateTolerances {
  double hermiticity = 1e-12;
  double trace = 1e-12;
  double min_eigenvalue = -1e-10;
};

/// Throws NumericalError if rho is not Hermitian, unit-trace and positive
/// within the given tolerances.
void validate(const TwoQubitState& state, const StateTolerances& tol = {});

/// Half the sum of singular values of a - b (both Hermitian).
double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Smallest eigenvalue of the Hermitian part of m.
double min_eigenvalue(const Eigen::MatrixXcd& m);

}  // namespace chshdyn
