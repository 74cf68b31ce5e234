#pragma once

#include <array>

namespace chshdyn {

using Sym3 = std::array<std::array<double, 3>, 3>;

struct SymEigen3 {
  std::array<double, 3> values{};  ///< unsorted, in rotation order
  Sym3 vectors{};                  ///< columns are eigenvectors
  int sweeps = 0;
};

/// Cyclic Jacobi rotations on a real symmetric 3x3 matrix until the
/// off-diagonal Frobenius norm drops below `tol` (absolute).
SymEigen3 jacobi_eigen_sym3(const Sym3& m, double tol = 1e-14);

}  // namespace chshdyn
