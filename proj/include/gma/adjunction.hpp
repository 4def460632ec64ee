#pragma once

#include <algorithm>

#include "gma/category.hpp"
#include "gma/functors.hpp"
#include "gma/law_report.hpp"
#include "gma/types.hpp"

namespace gma {

/// Tolerance for the "is this really a morphism Fa -> y" endpoint gates.
inline constexpr double kHomGateTol = 1e-9;

// ---------------------------------------------------------------------------
// Hom-set elements.
//
// Hom_Data(Fa, y) has exactly one element, the translation by
//     dr = y - X a - b,
// and Hom_Prm(a, Gy) has exactly one element, the translation by
//     dalpha = G y - a.
// The bijection between them is realized by explicit formulas in both
// directions; `adjunct` transports a residual translation to a parameter
// correction and back.
// ---------------------------------------------------------------------------

/// The unique residual morphism +{y - Xa - b} : forward(a) -> y.
template <class Scalar>
DataMorphism<Scalar> canonical_residual(const RegressionContext<Scalar>& ctx,
                                        const PrmObject<Scalar>& a,
                                        const DataObject<Scalar>& y) {
  const DataObject<Scalar> fa = forward(ctx, a);
  return DataMorphism<Scalar>(fa, Vec<Scalar>(y.value() - fa.value()));
}

/// The unique parameter-correction morphism +{Gy - a} : a -> recover(y).
template <class Scalar>
PrmMorphism<Scalar> canonical_correction(const RegressionContext<Scalar>& ctx,
                                         const PrmObject<Scalar>& a,
                                         const DataObject<Scalar>& y) {
  return PrmMorphism<Scalar>(
      a, Vec<Scalar>(recover(ctx, y).value() - a.value()));
}

/// Unit at a: the translation +G b : a -> recover(forward(a)).
/// Constant in a; it vanishes exactly when the calibration is zero.
template <class Scalar>
PrmMorphism<Scalar> unit(const RegressionContext<Scalar>& ctx,
                         const PrmObject<Scalar>& a) {
  return PrmMorphism<Scalar>(a,
                             Vec<Scalar>(ctx.left_inv() * ctx.calibration()));
}

/// Counit at y: the translation +{(I - P) y - b} : forward(recover(y)) -> y.
template <class Scalar>
DataMorphism<Scalar> counit(const RegressionContext<Scalar>& ctx,
                            const DataObject<Scalar>& y) {
  const DataObject<Scalar> fgy = forward(ctx, recover(ctx, y));
  return DataMorphism<Scalar>(
      fgy, Vec<Scalar>(y.value() - ctx.proj() * y.value() - ctx.calibration()));
}

/// Transport a residual morphism dr : forward(a) -> y to the parameter side:
/// returns +{G(b + dr)} : a -> recover(y), which equals +{Gy - a}.
/// Throws NotAMorphismError when dr does not connect forward(a) to y.
template <class Scalar>
PrmMorphism<Scalar> adjunct(const RegressionContext<Scalar>& ctx,
                            const PrmObject<Scalar>& a,
                            const DataObject<Scalar>& y,
                            const DataMorphism<Scalar>& dr,
                            double gate_tol = kHomGateTol) {
  const DataObject<Scalar> fa = forward(ctx, a);
  if (max_norm_diff(dr.from(), fa.value()) > gate_tol)
    throw NotAMorphismError("adjunct: residual morphism does not start at forward(a)");
  if (max_norm_diff(dr.to(), y.value()) > gate_tol)
    throw NotAMorphismError("adjunct: residual morphism does not land on y");
  return PrmMorphism<Scalar>(
      a, Vec<Scalar>(ctx.left_inv() * (ctx.calibration() + dr.delta())));
}

/// Transport a parameter correction dalpha : a -> recover(y) to the data
/// side: returns +{X dalpha + (I - P) y - b} : forward(a) -> y.
/// Throws NotAMorphismError when dalpha does not connect a to recover(y).
template <class Scalar>
DataMorphism<Scalar> adjunct(const RegressionContext<Scalar>& ctx,
                             const PrmObject<Scalar>& a,
                             const DataObject<Scalar>& y,
                             const PrmMorphism<Scalar>& dalpha,
                             double gate_tol = kHomGateTol) {
  if (max_norm_diff(dalpha.from(), a.value()) > gate_tol)
    throw NotAMorphismError("adjunct: correction morphism does not start at a");
  if (max_norm_diff(dalpha.to(), recover(ctx, y).value()) > gate_tol)
    throw NotAMorphismError("adjunct: correction morphism does not land on recover(y)");
  const Vec<Scalar> residual_part =
      y.value() - ctx.proj() * y.value() - ctx.calibration();
  return DataMorphism<Scalar>(
      forward(ctx, a),
      Vec<Scalar>(ctx.design() * dalpha.delta() + residual_part));
}

/// One fully materialized instance of the bijection at a chosen (a, y):
/// the matched (dr, dalpha) pair plus the unit and counit components.
template <class Scalar>
struct AdjunctionWitness {
  PrmObject<Scalar> a;
  DataObject<Scalar> y;
  DataMorphism<Scalar> delta_r;      // forward(a) -> y
  PrmMorphism<Scalar> delta_alpha;   // a -> recover(y)
  PrmMorphism<Scalar> unit_at_a;     // a -> recover(forward(a))
  DataMorphism<Scalar> counit_at_y;  // forward(recover(y)) -> y
};

template <class Scalar>
AdjunctionWitness<Scalar> make_witness(const RegressionContext<Scalar>& ctx,
                                       const PrmObject<Scalar>& a,
                                       const DataObject<Scalar>& y) {
  return AdjunctionWitness<Scalar>{a, y, canonical_residual(ctx, a, y),
                                   canonical_correction(ctx, a, y),
                                   unit(ctx, a), counit(ctx, y)};
}

using AdjunctionWitnessd = AdjunctionWitness<double>;

// ---------------------------------------------------------------------------
// Law checks. Each evaluates the two sides of one commuting identity by
// independent arithmetic routes and records the max-norm defect.
// ---------------------------------------------------------------------------

/// Fault-injection hooks for exercising the failure paths of the checkers.
struct AdjunctionCheckOptions {
  /// Evaluate the unit without its calibration component (as +0 instead of
  /// +Gb). With a nonzero calibration this must make the unit-side laws
  /// fail; used to prove the suite can fail at all.
  bool drop_unit_calibration = false;
};

namespace detail {

template <class Scalar>
Vec<Scalar> unit_delta(const RegressionContext<Scalar>& ctx,
                       const AdjunctionCheckOptions& opts) {
  if (opts.drop_unit_calibration) return Vec<Scalar>::Zero(ctx.param_dim());
  return Vec<Scalar>(ctx.left_inv() * ctx.calibration());
}

}  // namespace detail

/// Triangle through the unit: the parameter correction factors as
/// recover(dr) after the unit, i.e. dalpha = G dr + G b.
template <class Scalar>
LawReport check_unit_triangle(const RegressionContext<Scalar>& ctx,
                              const PrmObject<Scalar>& a,
                              const DataObject<Scalar>& y,
                              const AdjunctionCheckOptions& opts = {}) {
  const DataMorphism<Scalar> dr = canonical_residual(ctx, a, y);
  const PrmMorphism<Scalar> dalpha = canonical_correction(ctx, a, y);
  const Vec<Scalar> via_unit =
      recover(ctx, dr).delta() + detail::unit_delta(ctx, opts);
  LawReport report;
  report.record("adjunction.unit_triangle",
                max_norm_diff(via_unit, dalpha.delta()), kLinearLawTol);
  return report;
}

/// Triangle through the counit: the residual factors as the counit after
/// forward(dalpha), i.e. dr = X dalpha + (I - P) y - b.
template <class Scalar>
LawReport check_counit_triangle(const RegressionContext<Scalar>& ctx,
                                const PrmObject<Scalar>& a,
                                const DataObject<Scalar>& y) {
  const DataMorphism<Scalar> dr = canonical_residual(ctx, a, y);
  const PrmMorphism<Scalar> dalpha = canonical_correction(ctx, a, y);
  const Vec<Scalar> via_counit =
      forward(ctx, dalpha).delta() + counit(ctx, y).delta();
  LawReport report;
  report.record("adjunction.counit_triangle",
                max_norm_diff(via_counit, dr.delta()), kLinearLawTol);
  return report;
}

/// Naturality square of the unit at a morphism +da : a -> a'. Both
/// composite paths a -> recover(forward(a')) are evaluated as delta sums:
/// da + Gb versus Gb + GX da.
template <class Scalar>
LawReport check_unit_naturality(const RegressionContext<Scalar>& ctx,
                                const PrmObject<Scalar>& a,
                                const PrmMorphism<Scalar>& da,
                                const AdjunctionCheckOptions& opts = {}) {
  if (max_norm_diff(da.from(), a.value()) > kHomGateTol)
    throw NotAMorphismError("check_unit_naturality: da does not start at a");
  const Vec<Scalar> mu = detail::unit_delta(ctx, opts);
  const Vec<Scalar> bottom = da.delta() + mu;                        // mu_{a'} o (+da)
  const Vec<Scalar> top = mu + recover(ctx, forward(ctx, da)).delta();  // GF(+da) o mu_a
  LawReport report;
  report.record("adjunction.unit_naturality", max_norm_diff(bottom, top),
                kLinearLawTol);
  return report;
}

/// Naturality square of the counit at a morphism +dy : y -> y', checked
/// with the roles of the two categories swapped: (+dy) o eps_y versus
/// eps_{y'} o FG(+dy).
template <class Scalar>
LawReport check_counit_naturality(const RegressionContext<Scalar>& ctx,
                                  const DataObject<Scalar>& y,
                                  const DataMorphism<Scalar>& dy) {
  const DataObject<Scalar> y_prime = dy.target();
  const Vec<Scalar> left = counit(ctx, y).delta() + dy.delta();
  const Vec<Scalar> right =
      forward(ctx, recover(ctx, dy)).delta() + counit(ctx, y_prime).delta();
  LawReport report;
  report.record("adjunction.counit_naturality", max_norm_diff(left, right),
                kLinearLawTol);
  return report;
}

/// Round trip through both directions of the bijection at the canonical
/// (dr, dalpha) pair of (a, y).
template <class Scalar>
LawReport check_round_trip(const RegressionContext<Scalar>& ctx,
                           const PrmObject<Scalar>& a,
                           const DataObject<Scalar>& y) {
  const DataMorphism<Scalar> dr = canonical_residual(ctx, a, y);
  const PrmMorphism<Scalar> dalpha = canonical_correction(ctx, a, y);

  const DataMorphism<Scalar> dr_again = adjunct(ctx, a, y, adjunct(ctx, a, y, dr));
  const PrmMorphism<Scalar> dalpha_again =
      adjunct(ctx, a, y, adjunct(ctx, a, y, dalpha));

  LawReport report;
  report.record("adjunction.round_trip_data", morphism_distance(dr_again, dr),
                kLinearLawTol);
  report.record("adjunction.round_trip_param",
                morphism_distance(dalpha_again, dalpha), kLinearLawTol);
  return report;
}

/// Sampled suite over random (a, y) pairs and random morphisms: triangles,
/// unit/counit recovery from the bijection, both naturality squares, and
/// the two round trips.
template <class Scalar>
LawReport check_adjunction_laws(const RegressionContext<Scalar>& ctx,
                                long trials, std::uint64_t seed,
                                const AdjunctionCheckOptions& opts = {}) {
  if (trials < 1) throw std::invalid_argument("check_adjunction_laws: trials >= 1");
  LawReport report;
  Sampler sampler(seed);
  const Index m = ctx.param_dim();
  const Index n = ctx.data_dim();

  for (long t = 0; t < trials; ++t) {
    const PrmObject<Scalar> a(sampler.vec(m).template cast<Scalar>());
    const DataObject<Scalar> y(sampler.vec(n).template cast<Scalar>());

    report.merge(check_unit_triangle(ctx, a, y, opts));
    report.merge(check_counit_triangle(ctx, a, y));
    report.merge(check_round_trip(ctx, a, y));

    // Unit and counit recovered as the two transports of identities.
    const DataObject<Scalar> fa = forward(ctx, a);
    const PrmMorphism<Scalar> phi_of_id = adjunct(ctx, a, fa, identity(fa));
    report.record("adjunction.unit_formula",
                  max_norm_diff(phi_of_id.delta(),
                                detail::unit_delta(ctx, opts)),
                  kLinearLawTol, t);

    const PrmObject<Scalar> gy = recover(ctx, y);
    const DataMorphism<Scalar> phi_inv_of_id = adjunct(ctx, gy, y, identity(gy));
    report.record("adjunction.counit_formula",
                  morphism_distance(phi_inv_of_id, counit(ctx, y)),
                  kLinearLawTol, t);

    const PrmMorphism<Scalar> da(a, sampler.vec(m).template cast<Scalar>());
    report.merge(check_unit_naturality(ctx, a, da, opts));
    const DataMorphism<Scalar> dy(y, sampler.vec(n).template cast<Scalar>());
    report.merge(check_counit_naturality(ctx, y, dy));
  }
  return report;
}

}  // namespace gma
