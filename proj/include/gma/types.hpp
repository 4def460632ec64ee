#pragma once

#include <Eigen/Dense>

namespace gma {

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matd = Mat<double>;
using Vecd = Vec<double>;

using Index = Eigen::Index;

/// Max-norm distance between two same-shaped dense expressions.
template <class A, class B>
typename A::Scalar max_norm_diff(const Eigen::MatrixBase<A>& a,
                                 const Eigen::MatrixBase<B>& b) {
  return (a - b).template lpNorm<Eigen::Infinity>();
}

}  // namespace gma
