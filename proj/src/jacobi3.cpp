#include "chshdyn/jacobi3.hpp"

#include <cmath>

#include "chshdyn/errors.hpp"

namespace chshdyn {

namespace {

double off_norm(const Sym3& a) {
  return std::sqrt(2.0 * (a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]));
}

}  // namespace

SymEigen3 jacobi_eigen_sym3(const Sym3& m, double tol) {
  Sym3 a = m;
  // symmetrise so one-sided round-off in the input cannot stall convergence
  for (int p = 0; p < 3; ++p)
    for (int q = p + 1; q < 3; ++q) a[p][q] = a[q][p] = 0.5 * (m[p][q] + m[q][p]);

  SymEigen3 out;
  Sym3& v = out.vectors;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v[i][j] = i == j ? 1.0 : 0.0;

  constexpr int kMaxSweeps = 64;
  while (off_norm(a) > tol) {
    if (++out.sweeps > kMaxSweeps) throw NumericalError("Jacobi eigen-solver did not converge");
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const double app = a[p][p], aqq = a[q][q], apq = a[p][q];
        a[p][p] = app - t * apq;
        a[q][q] = aqq + t * apq;
        a[p][q] = a[q][p] = 0.0;
        for (int r = 0; r < 3; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[r][p], arq = a[r][q];
          a[r][p] = a[p][r] = c * arp - s * arq;
          a[r][q] = a[q][r] = s * arp + c * arq;
        }
        for (int r = 0; r < 3; ++r) {
          const double vrp = v[r][p], vrq = v[r][q];
          v[r][p] = c * vrp - s * vrq;
          v[r][q] = s * vrp + c * vrq;
        }
      }
    }
  }
  for (int i = 0; i < 3; ++i) out.values[i] = a[i][i];
  return out;
}

}  // namespace chshdyn
