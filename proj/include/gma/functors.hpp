#pragma once

#include <string>
#include <utility>

#include "gma/category.hpp"
#include "gma/errors.hpp"
#include "gma/numlin.hpp"
#include "gma/types.hpp"

namespace gma {

/// Tolerance for laws whose evaluation goes through a matrix product.
inline constexpr double kLinearLawTol = 1e-9;

// ---------------------------------------------------------------------------
// RegressionContext: the fixed (X, b) pair both functors derive from.
// ---------------------------------------------------------------------------

/// Immutable bundle of a full-column-rank design matrix X (n x m), a fixed
/// calibration vector b (dim n), and the derived left inverse G = (X^T X)^{-1} X^T
/// and projection P = X G. Everything downstream (functors, adjunction,
/// descent) is induced by one context.
template <class Scalar>
class RegressionContext {
 public:
  RegressionContext(Mat<Scalar> X, Vec<Scalar> b)
      : X_(std::move(X)), b_(std::move(b)) {
    if (X_.rows() < 1 || X_.cols() < 1)
      throw DimensionError("RegressionContext: X must be at least 1 x 1");
    if (X_.cols() > X_.rows())
      throw DimensionError("RegressionContext: need m <= n, got m = " +
                           std::to_string(X_.cols()) + ", n = " +
                           std::to_string(X_.rows()));
    if (b_.size() != X_.rows())
      throw DimensionError("RegressionContext: calibration dim != rows(X)");
    require_finite(X_, "RegressionContext X");
    require_finite(b_, "RegressionContext b");
    rank_margin_ = singular_value_ratio(X_);
    if (!(rank_margin_ > kRankRelTol))
      throw RankDeficientError("RegressionContext: X is rank deficient");
    G_ = left_inverse(X_);
    P_ = projection(X_, G_);
  }

  /// Context with zero calibration.
  explicit RegressionContext(Mat<Scalar> X) {
    const Index n = X.rows();
    *this = RegressionContext(std::move(X), Vec<Scalar>::Zero(n));
  }

  Index data_dim() const { return X_.rows(); }   // n
  Index param_dim() const { return X_.cols(); }  // m

  const Mat<Scalar>& design() const { return X_; }
  const Vec<Scalar>& calibration() const { return b_; }
  const Mat<Scalar>& left_inv() const { return G_; }
  const Mat<Scalar>& proj() const { return P_; }

  /// sigma_min / sigma_max of X, as measured at construction.
  Scalar rank_margin() const { return rank_margin_; }

 private:
  Mat<Scalar> X_;
  Vec<Scalar> b_;
  Mat<Scalar> G_;
  Mat<Scalar> P_;
  Scalar rank_margin_{};
};

using RegressionContextd = RegressionContext<double>;

// ---------------------------------------------------------------------------
// The affine forward functor and the Gauss-Markov functor.
//
// forward : Prm -> Data     a |-> X a + b,      +da |-> +X da
// recover : Data -> Prm     y |-> G y,          +dy |-> +G dy
//
// Both act on objects and morphisms through the same name; the morphism
// image is based at the image of the morphism's source.
// ---------------------------------------------------------------------------

template <class Scalar>
DataObject<Scalar> forward(const RegressionContext<Scalar>& ctx,
                           const PrmObject<Scalar>& a) {
  if (a.dim() != ctx.param_dim())
    throw DimensionError("forward: object dim != param_dim");
  return DataObject<Scalar>(ctx.design() * a.value() + ctx.calibration());
}

template <class Scalar>
DataMorphism<Scalar> forward(const RegressionContext<Scalar>& ctx,
                             const PrmMorphism<Scalar>& da) {
  if (da.delta().size() != ctx.param_dim())
    throw DimensionError("forward: morphism dim != param_dim");
  return DataMorphism<Scalar>(forward(ctx, da.source()),
                              Vec<Scalar>(ctx.design() * da.delta()));
}

template <class Scalar>
PrmObject<Scalar> recover(const RegressionContext<Scalar>& ctx,
                          const DataObject<Scalar>& y) {
  if (y.dim() != ctx.data_dim())
    throw DimensionError("recover: object dim != data_dim");
  return PrmObject<Scalar>(ctx.left_inv() * y.value());
}

template <class Scalar>
PrmMorphism<Scalar> recover(const RegressionContext<Scalar>& ctx,
                            const DataMorphism<Scalar>& dy) {
  if (dy.delta().size() != ctx.data_dim())
    throw DimensionError("recover: morphism dim != data_dim");
  return PrmMorphism<Scalar>(recover(ctx, dy.source()),
                             Vec<Scalar>(ctx.left_inv() * dy.delta()));
}

// ---------------------------------------------------------------------------
// Sampling and the functor-law checker.
// ---------------------------------------------------------------------------

/// Random context: n in [1, max_n], m in [1, min(n, max_m)], X uniform in
/// [-1, 1] resampled until full rank, b uniform (or zero).
inline RegressionContextd sample_context(Sampler& sampler, Index max_n,
                                         Index max_m, bool random_calibration) {
  const Index n = sampler.uniform_index(1, max_n);
  const Index m = sampler.uniform_index(1, std::min<Index>(n, max_m));
  Matd X = sampler.mat(n, m);
  while (!has_full_column_rank(X)) X = sampler.mat(n, m);
  Vecd b = random_calibration ? sampler.vec(n) : Vecd(Vecd::Zero(n));
  return RegressionContextd(std::move(X), std::move(b));
}

/// Measures, on random morphisms: identity preservation (exact addition,
/// tol 1e-12), composition preservation and object/morphism coherence
/// (matrix products, tol 1e-9), for both functors, plus the composite
/// shift recover(forward(a)) == a + G b.
inline LawReport check_functor_laws(const RegressionContextd& ctx, long trials,
                                    std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("check_functor_laws: trials >= 1");
  LawReport report;
  Sampler sampler(seed);
  const Index m = ctx.param_dim();
  const Index n = ctx.data_dim();
  const Vecd gb = ctx.left_inv() * ctx.calibration();

  for (long t = 0; t < trials; ++t) {
    const PrmObjectd a(sampler.vec(m));
    const DataObjectd y(sampler.vec(n));

    // Identity preservation: F(+0) = +0 at F(a), G(+0) = +0 at G(y).
    report.record("functor.forward_identity",
                  morphism_distance(forward(ctx, identity(a)),
                                    identity(forward(ctx, a))),
                  kAdditiveLawTol, t);
    report.record("functor.recover_identity",
                  morphism_distance(recover(ctx, identity(y)),
                                    identity(recover(ctx, y))),
                  kAdditiveLawTol, t);

    // Composition preservation on a chained pair.
    {
      const PrmMorphismd d2(a, sampler.vec(m));
      const PrmMorphismd d1(d2.target(), sampler.vec(m));
      const double defect = morphism_distance(
          forward(ctx, compose(d1, d2)),
          compose(forward(ctx, d1), forward(ctx, d2)));
      report.record("functor.forward_composition", defect, kLinearLawTol, t);
    }
    {
      const DataMorphismd d2(y, sampler.vec(n));
      const DataMorphismd d1(d2.target(), sampler.vec(n));
      const double defect = morphism_distance(
          recover(ctx, compose(d1, d2)),
          compose(recover(ctx, d1), recover(ctx, d2)));
      report.record("functor.recover_composition", defect, kLinearLawTol, t);
    }

    // Coherence: the morphism image really runs F(a) -> F(a + da).
    {
      const PrmMorphismd da(a, sampler.vec(m));
      const DataMorphismd fda = forward(ctx, da);
      const double defect =
          max_norm_diff(Vecd(fda.from() + fda.delta()),
                        forward(ctx, da.target()).value());
      report.record("functor.forward_coherence", defect, kLinearLawTol, t);
    }
    {
      const DataMorphismd dy(y, sampler.vec(n));
      const PrmMorphismd gdy = recover(ctx, dy);
      const double defect =
          max_norm_diff(Vecd(gdy.from() + gdy.delta()),
                        recover(ctx, dy.target()).value());
      report.record("functor.recover_coherence", defect, kLinearLawTol, t);
    }

    // recover(forward(a)) = a + G b: the composite endofunctor is the
    // translation by G b.
    report.record("functor.round_trip_shift",
                  max_norm_diff(recover(ctx, forward(ctx, a)).value(),
                                Vecd(a.value() + gb)),
                  kLinearLawTol, t);
  }
  return report;
}

}  // namespace gma
