#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "gma/errors.hpp"
#include "gma/rng.hpp"
#include "gma/types.hpp"

namespace gma {

/// Relative rank tolerance: a matrix counts as full column rank when
/// sigma_min > kRankRelTol * sigma_max.
inline constexpr double kRankRelTol = 1e-10;

/// Relative accuracy target for the dominant-eigenvalue estimate.
inline constexpr double kPowerIterRelTol = 1e-8;

/// Iteration cap for power iteration.
inline constexpr long kPowerIterMaxIter = 10000;

template <class Derived>
void require_finite(const Eigen::MatrixBase<Derived>& x, const char* what) {
  if (!x.allFinite()) throw NonFiniteError(std::string(what) + ": non-finite entries");
}

/// sigma_min / sigma_max of a dense matrix; 0 when sigma_max == 0 or the
/// matrix has more columns than rows (column rank cannot be full).
template <class Derived>
typename Derived::Scalar singular_value_ratio(const Eigen::MatrixBase<Derived>& X) {
  using S = typename Derived::Scalar;
  if (X.rows() < X.cols()) return S(0);
  Eigen::JacobiSVD<Mat<S>> svd(X.eval());
  const auto& sv = svd.singularValues();
  const S largest = sv(0);
  if (!(largest > S(0))) return S(0);
  return sv(sv.size() - 1) / largest;
}

/// Full-column-rank predicate with a relative singular-value cutoff.
template <class Derived>
bool has_full_column_rank(const Eigen::MatrixBase<Derived>& X,
                          double rel_tol = kRankRelTol) {
  return singular_value_ratio(X) > rel_tol;
}

/// Left inverse G of a full-column-rank X (G X = I), computed through a
/// column-pivoted Householder QR of X rather than by inverting X^T X.
template <class Derived>
Mat<typename Derived::Scalar> left_inverse(const Eigen::MatrixBase<Derived>& X) {
  using S = typename Derived::Scalar;
  if (X.rows() < 1 || X.cols() < 1)
    throw DimensionError("left_inverse: empty matrix");
  if (X.rows() < X.cols())
    throw DimensionError("left_inverse: more columns than rows (" +
                         std::to_string(X.cols()) + " > " +
                         std::to_string(X.rows()) + ")");
  require_finite(X, "left_inverse");
  if (!has_full_column_rank(X))
    throw RankDeficientError("left_inverse: design matrix is rank deficient");
  Eigen::ColPivHouseholderQR<Mat<S>> qr(X.eval());
  // Least-squares solve of X G = I yields G = (X^T X)^{-1} X^T.
  return qr.solve(Mat<S>::Identity(X.rows(), X.rows()));
}

/// Projection P = X G onto the column space of X.
template <class DX, class DG>
Mat<typename DX::Scalar> projection(const Eigen::MatrixBase<DX>& X,
                                    const Eigen::MatrixBase<DG>& G) {
  if (G.rows() != X.cols() || G.cols() != X.rows())
    throw DimensionError("projection: G must be cols(X) x rows(X)");
  return X * G;
}

/// Largest eigenvalue of X X^T (equivalently X^T X) by power iteration on
/// the smaller Gram matrix, with a fixed internal seed. Stops when the
/// Rayleigh-quotient residual drops below rel_tol * estimate.
template <class Derived>
typename Derived::Scalar gram_spectral_radius(const Eigen::MatrixBase<Derived>& X,
                                              double rel_tol = kPowerIterRelTol,
                                              long max_iter = kPowerIterMaxIter) {
  using S = typename Derived::Scalar;
  require_finite(X, "gram_spectral_radius");
  if (X.squaredNorm() == S(0))
    throw std::invalid_argument("gram_spectral_radius: zero matrix");

  const bool use_rows = X.rows() <= X.cols();
  const Mat<S> B = use_rows ? Mat<S>(X * X.transpose())
                            : Mat<S>(X.transpose() * X);
  const Index d = B.rows();

  Sampler sampler(0x9e3779b97f4a7c15ull);  // fixed seed: deterministic estimate
  Vec<S> v = sampler.vec(d).template cast<S>();
  v.normalize();

  for (long it = 0; it < max_iter; ++it) {
    Vec<S> w = B * v;
    const S lambda = v.dot(w);
    if ((w - lambda * v).norm() <= rel_tol * lambda && lambda > S(0)) return lambda;
    const S wn = w.norm();
    if (wn == S(0)) {
      // Start vector fell in the null space; redraw.
      v = sampler.vec(d).template cast<S>();
      v.normalize();
      continue;
    }
    v = w / wn;
  }
  throw ConvergenceError("gram_spectral_radius: power iteration hit " +
                         std::to_string(max_iter) + " iterations");
}

}  // namespace gma
