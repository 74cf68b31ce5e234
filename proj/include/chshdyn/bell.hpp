#pragma once

// Maximal CHSH value of a two-qubit state: closed form for X states and the
// general correlation-matrix criterion (two largest eigenvalues of T^T T).

#include <utility>

#include <Eigen/Dense>

#include "chshdyn/errors.hpp"
#include "chshdyn/states.hpp"

namespace chshdyn {

struct BellResult {
  double B = 0.0;
  std::pair<int, int> pair{0, 0};  ///< indices (1-based) of the attaining u-pair or eigenvalues
  double violation = 0.0;          ///< max(0, B - 2)
};

/// Thrown by chsh_max_xstate on input that is not X-structured.
class NotXStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

constexpr double kXStateTolerance = 1e-10;

bool is_x_state(const TwoQubitState& state, double tol = kXStateTolerance);

/// B = 2 max_{i<j} sqrt(u_i + u_j) with u1..u3 built from the diagonal and
/// anti-diagonal entries. Negative pair sums are clamped to zero.
BellResult chsh_max_xstate(const TwoQubitState& state);

/// T_ij = Tr[rho (sigma_i x sigma_j)], i, j in {x, y, z}.
Eigen::Matrix3d correlation_matrix(const TwoQubitState& state);

BellResult chsh_max_horodecki(const TwoQubitState& state);

/// Closed form when the X structure holds, general criterion otherwise.
BellResult chsh_max(const TwoQubitState& state);

/// max(0, B - 2), using the closed form when the X structure holds.
double violation_margin(const TwoQubitState& state);

}  // namespace chshdyn
