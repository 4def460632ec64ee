#pragma once

// Test-side oracles. Deliberately naive (plain loops, schoolbook
// algorithms) so they share no code path with the library they judge.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "gma/types.hpp"

namespace oracle {

using gma::Index;
using gma::Matd;
using gma::Vecd;

/// Solves the normal equations X^T X a = X^T y by forming them with explicit
/// loops and running Gaussian elimination with partial pivoting.
inline Vecd normal_equations(const Matd& X, const Vecd& y) {
  const Index n = X.rows();
  const Index m = X.cols();
  std::vector<std::vector<double>> A(
      static_cast<std::size_t>(m),
      std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0));
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) {
      double s = 0;
      for (Index k = 0; k < n; ++k) s += X(k, i) * X(k, j);
      A[i][j] = s;
    }
    double c = 0;
    for (Index k = 0; k < n; ++k) c += X(k, i) * y[k];
    A[i][m] = c;
  }

  for (Index col = 0; col < m; ++col) {
    Index piv = col;
    for (Index r = col + 1; r < m; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    std::swap(A[col], A[piv]);
    if (A[col][col] == 0.0)
      throw std::runtime_error("oracle: singular normal equations");
    for (Index r = col + 1; r < m; ++r) {
      const double f = A[r][col] / A[col][col];
      for (Index c2 = col; c2 <= m; ++c2) A[r][c2] -= f * A[col][c2];
    }
  }
  Vecd a(m);
  for (Index r = m; r-- > 0;) {
    double s = A[r][m];
    for (Index c2 = r + 1; c2 < m; ++c2) s -= A[r][c2] * a[c2];
    a[r] = s / A[r][r];
  }
  return a;
}

/// Central finite differences of a scalar field.
inline Vecd central_diff(const std::function<double(const Vecd&)>& f,
                         const Vecd& a, double h) {
  Vecd g(a.size());
  for (Index i = 0; i < a.size(); ++i) {
    Vecd hi = a, lo = a;
    hi[i] += h;
    lo[i] -= h;
    g[i] = (f(hi) - f(lo)) / (2.0 * h);
  }
  return g;
}

/// sigma_min / sigma_max of a 2x2 matrix in closed form, via the
/// characteristic polynomial of M^T M.
inline double sv_ratio_2x2(const Matd& M) {
  const double a = M(0, 0), b = M(0, 1), c = M(1, 0), d = M(1, 1);
  const double t = a * a + b * b + c * c + d * d;  // tr(M^T M)
  const double det = a * d - b * c;                // det M
  const double disc = std::sqrt(std::max(0.0, t * t - 4.0 * det * det));
  const double smax = std::sqrt(std::max(0.0, 0.5 * (t + disc)));
  const double smin = std::sqrt(std::max(0.0, 0.5 * (t - disc)));
  return smax == 0.0 ? 0.0 : smin / smax;
}

}  // namespace oracle
