#include "chshdyn/bell.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "chshdyn/jacobi3.hpp"

namespace chshdyn {

namespace {

BellResult make_result(double m, std::pair<int, int> pair) {
  BellResult r;
  r.B = 2.0 * std::sqrt(std::max(m, 0.0));
  r.pair = pair;
  r.violation = std::max(0.0, r.B - 2.0);
  return r;
}

// Pauli matrices in the local basis {|1>, |0>}.
const std::array<Eigen::Matrix2cd, 3>& paulis() {
  static const std::array<Eigen::Matrix2cd, 3> s = [] {
    std::array<Eigen::Matrix2cd, 3> p;
    const cplx i(0.0, 1.0);
    p[0] << 0.0, 1.0, 1.0, 0.0;
    p[1] << 0.0, -i, i, 0.0;
    p[2] << 1.0, 0.0, 0.0, -1.0;
    return p;
  }();
  return s;
}

}  // namespace

bool is_x_state(const TwoQubitState& state, double tol) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j || i + j == 3) continue;
      if (std::abs(state.rho(i, j)) > tol) return false;
    }
  }
  return true;
}

BellResult chsh_max_xstate(const TwoQubitState& state) {
  if (!is_x_state(state)) {
    throw NotXStateError("state is not X-structured; use the general correlation-matrix criterion");
  }
  const auto& r = state.rho;
  const double d = r(0, 0).real() + r(3, 3).real() - r(1, 1).real() - r(2, 2).real();
  // The transverse block of T has singular values 2(|rho23| + |rho14|) and
  // 2||rho23| - |rho14||. With rho14 = 0 both reduce to 4|rho23|^2.
  const double a23 = std::abs(r(1, 2));
  const double a14 = std::abs(r(0, 3));
  const std::array<double, 3> u{d * d, 4.0 * (a23 + a14) * (a23 + a14), 4.0 * (a23 - a14) * (a23 - a14)};

  const std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {1, 3}, {2, 3}}};
  double best = -1.0;
  std::pair<int, int> arg{1, 2};
  for (const auto& [i, j] : pairs) {
    const double s = std::max(0.0, u[i - 1] + u[j - 1]);
    if (s > best) {
      best = s;
      arg = {i, j};
    }
  }
  return make_result(best, arg);
}

Eigen::Matrix3d correlation_matrix(const TwoQubitState& state) {
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Eigen::Matrix2cd& a = paulis()[i];
      const Eigen::Matrix2cd& b = paulis()[j];
      cplx acc = 0.0;
      // Tr[rho (a x b)] = sum rho_{(kl),(mn)} a_{mk} b_{nl}
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          for (int m = 0; m < 2; ++m)
            for (int n = 0; n < 2; ++n) acc += state.rho(2 * k + l, 2 * m + n) * a(m, k) * b(n, l);
      t(i, j) = acc.real();
    }
  }
  return t;
}

BellResult chsh_max_horodecki(const TwoQubitState& state) {
  const Eigen::Matrix3d t = correlation_matrix(state);
  const Eigen::Matrix3d m = t.transpose() * t;
  Sym3 sym;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) sym[i][j] = m(i, j);
  const SymEigen3 eig = jacobi_eigen_sym3(sym);

  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return eig.values[a] > eig.values[b]; });
  const double top2 = eig.values[order[0]] + eig.values[order[1]];
  return make_result(top2, {std::min(order[0], order[1]) + 1, std::max(order[0], order[1]) + 1});
}

BellResult chsh_max(const TwoQubitState& state) {
  return is_x_state(state) ? chsh_max_xstate(state) : chsh_max_horodecki(state);
}

double violation_margin(const TwoQubitState& state) { return chsh_max(state).violation; }

}  // namespace chshdyn
