#pragma once

#include <algorithm>
#include <utility>

#include "gma/errors.hpp"
#include "gma/law_report.hpp"
#include "gma/numlin.hpp"
#include "gma/rng.hpp"
#include "gma/types.hpp"

namespace gma {

/// Tolerance for laws that involve nothing but vector addition.
inline constexpr double kAdditiveLawTol = 1e-12;

/// Tolerance on the source/target chain when composing translations.
inline constexpr double kMorphismChainTol = 1e-12;

struct prm_tag {};
struct data_tag {};

// ---------------------------------------------------------------------------
// Objects and morphisms of the two translation categories.
//
// Both categories have vectors as objects and translations "+delta" as
// morphisms. The tag keeps parameter-side and data-side values apart at
// compile time; the only runtime difference is the dimension.
// ---------------------------------------------------------------------------

template <class Scalar, class Tag>
class Object {
 public:
  explicit Object(Vec<Scalar> value) : value_(std::move(value)) {
    if (value_.size() < 1) throw DimensionError("Object: dimension must be >= 1");
    require_finite(value_, "Object");
  }

  const Vec<Scalar>& value() const { return value_; }
  Index dim() const { return value_.size(); }

 private:
  Vec<Scalar> value_;
};

/// A translation morphism `+delta : source -> source + delta`.
///
/// The translation itself is determined by `delta` alone; the source is
/// carried so that composition chains and the commuting diagrams built on
/// top of them can be checked.
template <class Scalar, class Tag>
class Translation {
 public:
  Translation(const Object<Scalar, Tag>& source, Vec<Scalar> delta)
      : source_(source.value()), delta_(std::move(delta)) {
    if (delta_.size() != source_.size())
      throw DimensionError("Translation: delta dimension does not match source");
    require_finite(delta_, "Translation");
  }

  const Vec<Scalar>& delta() const { return delta_; }
  const Vec<Scalar>& from() const { return source_; }
  Vec<Scalar> to() const { return source_ + delta_; }

  Object<Scalar, Tag> source() const { return Object<Scalar, Tag>(source_); }
  Object<Scalar, Tag> target() const { return Object<Scalar, Tag>(to()); }

  /// The inverse translation `-delta : target -> source`.
  Translation inverse() const { return Translation(target(), Vec<Scalar>(-delta_)); }

 private:
  Vec<Scalar> source_;
  Vec<Scalar> delta_;
};

template <class Scalar> using PrmObject = Object<Scalar, prm_tag>;
template <class Scalar> using PrmMorphism = Translation<Scalar, prm_tag>;
template <class Scalar> using DataObject = Object<Scalar, data_tag>;
template <class Scalar> using DataMorphism = Translation<Scalar, data_tag>;

using PrmObjectd = PrmObject<double>;
using PrmMorphismd = PrmMorphism<double>;
using DataObjectd = DataObject<double>;
using DataMorphismd = DataMorphism<double>;

/// Identity morphism `+0` at an object.
template <class Scalar, class Tag>
Translation<Scalar, Tag> identity(const Object<Scalar, Tag>& obj) {
  return Translation<Scalar, Tag>(obj, Vec<Scalar>::Zero(obj.dim()));
}

/// Composition `f after g`: the translation by `g.delta + f.delta` at the
/// source of g. The chain must connect: target(g) == source(f) up to
/// `chain_tol` in max norm.
template <class Scalar, class Tag>
Translation<Scalar, Tag> compose(const Translation<Scalar, Tag>& f,
                                 const Translation<Scalar, Tag>& g,
                                 double chain_tol = kMorphismChainTol) {
  if (f.from().size() != g.from().size())
    throw DimensionError("compose: morphisms live in different dimensions");
  if (max_norm_diff(g.to(), f.from()) > chain_tol)
    throw CompositionError("compose: target(g) != source(f)");
  return Translation<Scalar, Tag>(g.source(), Vec<Scalar>(g.delta() + f.delta()));
}

/// Distance between morphisms: componentwise max-norm disagreement of
/// (source, delta). Two morphisms are equal when this is ~0.
template <class Scalar, class Tag>
Scalar morphism_distance(const Translation<Scalar, Tag>& f,
                         const Translation<Scalar, Tag>& g) {
  if (f.from().size() != g.from().size()) throw DimensionError("morphism_distance");
  return std::max(max_norm_diff(f.from(), g.from()),
                  max_norm_diff(f.delta(), g.delta()));
}

template <class Scalar, class Tag>
bool approx_equal(const Translation<Scalar, Tag>& f,
                  const Translation<Scalar, Tag>& g,
                  double tol = kAdditiveLawTol) {
  return morphism_distance(f, g) <= tol;
}

// ---------------------------------------------------------------------------
// Randomized category-law checker.
// ---------------------------------------------------------------------------

namespace detail {

template <class Scalar, class Tag>
void check_laws_one_category(LawReport& report, Sampler& sampler, Index dim,
                             long sample_index) {
  using T = Translation<Scalar, Tag>;
  const Object<Scalar, Tag> base(sampler.vec(dim));

  // Chain a --h--> . --g--> . --f--> .
  const T h(base, sampler.vec(dim));
  const T g(h.target(), sampler.vec(dim));
  const T f(g.target(), sampler.vec(dim));

  report.record("category.associativity",
                morphism_distance(compose(compose(f, g), h), compose(f, compose(g, h))),
                kAdditiveLawTol, sample_index);
  report.record("category.identity_left",
                morphism_distance(compose(identity(f.target()), f), f),
                kAdditiveLawTol, sample_index);
  report.record("category.identity_right",
                morphism_distance(compose(f, identity(f.source())), f),
                kAdditiveLawTol, sample_index);
  const double inv_defect =
      std::max(morphism_distance(compose(f, f.inverse()), identity(f.target())),
               morphism_distance(compose(f.inverse(), f), identity(f.source())));
  report.record("category.inverse", inv_defect, kAdditiveLawTol, sample_index);
}

}  // namespace detail

/// Samples random objects and translation chains in both categories and
/// measures the defect of associativity, left/right identity, and the
/// inverse law. Entries are uniform in [-1, 1].
inline LawReport check_category_laws(long trials, Index prm_dim, Index data_dim,
                                     std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("check_category_laws: trials >= 1");
  LawReport report;
  Sampler sampler(seed);
  for (long t = 0; t < trials; ++t) {
    detail::check_laws_one_category<double, prm_tag>(report, sampler, prm_dim, t);
    detail::check_laws_one_category<double, data_tag>(report, sampler, data_dim, t);
  }
  return report;
}

}  // namespace gma
