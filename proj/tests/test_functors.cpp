#include <limits>

#include "doctest.h"
#include "gma/functors.hpp"
#include "oracles.hpp"

using namespace gma;

namespace {

Matd two_ones() {
  Matd X(2, 1);
  X << 1, 1;
  return X;
}

Matd embed32() {
  Matd X(3, 2);
  X << 1, 0, 0, 1, 0, 0;
  return X;
}

Vecd v(std::initializer_list<double> xs) {
  Vecd out(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

}  // namespace

TEST_CASE("context construction validates its inputs") {
  CHECK_THROWS_AS(RegressionContextd(Matd(0, 0)), DimensionError);

  Matd wide(1, 2);
  wide << 1, 2;
  CHECK_THROWS_AS(RegressionContextd{wide}, DimensionError);

  CHECK_THROWS_AS(RegressionContextd(two_ones(), v({1.0})), DimensionError);

  Matd nan1(1, 1);
  nan1 << std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(RegressionContextd{nan1}, NonFiniteError);

  Matd dup(3, 2);
  dup << 1, 1, 2, 2, 3, 3;
  CHECK_THROWS_AS(RegressionContextd{dup}, RankDeficientError);
}

TEST_CASE("context derives G and P with the contract identities") {
  const RegressionContextd ctx(embed32());
  CHECK(ctx.data_dim() == 3);
  CHECK(ctx.param_dim() == 2);
  CHECK(max_norm_diff(ctx.left_inv() * ctx.design(), Matd(Matd::Identity(2, 2))) <= 1e-9);
  CHECK(max_norm_diff(ctx.proj(), ctx.design() * ctx.left_inv()) <= 1e-12);
  CHECK(ctx.rank_margin() > kRankRelTol);
  CHECK(ctx.calibration().isZero(0.0));
}

TEST_CASE("forward on objects: pinned cases") {
  {
    const RegressionContextd ctx(Matd(Matd::Identity(2, 2)));
    CHECK(max_norm_diff(forward(ctx, PrmObjectd(v({3, 4}))).value(), v({3, 4})) == 0.0);
  }
  {
    const RegressionContextd ctx(two_ones(), v({1, 1}));
    CHECK(max_norm_diff(forward(ctx, PrmObjectd(v({2}))).value(), v({3, 3})) == 0.0);
  }
  {
    const RegressionContextd ctx(embed32());
    CHECK(max_norm_diff(forward(ctx, PrmObjectd(v({5, 7}))).value(), v({5, 7, 0})) == 0.0);
  }
}

TEST_CASE("forward on morphisms: +X delta, source mapped along") {
  const RegressionContextd ctx(two_ones());
  const PrmObjectd a(v({1}));
  const PrmMorphismd da(a, v({2}));
  const DataMorphismd image = forward(ctx, da);
  CHECK(max_norm_diff(image.delta(), v({2, 2})) == 0.0);
  CHECK(max_norm_diff(image.from(), forward(ctx, a).value()) == 0.0);

  // The calibration cancels on morphisms.
  const RegressionContextd shifted(two_ones(), v({5, -3}));
  CHECK(max_norm_diff(forward(shifted, da).delta(), v({2, 2})) == 0.0);
}

TEST_CASE("recover on objects: pinned cases") {
  {
    const RegressionContextd ctx(Matd(Matd::Identity(2, 2)));
    CHECK(max_norm_diff(recover(ctx, DataObjectd(v({3, 4}))).value(), v({3, 4})) <= 1e-14);
  }
  {
    const RegressionContextd ctx(two_ones());
    CHECK(max_norm_diff(recover(ctx, DataObjectd(v({1, 3}))).value(), v({2})) <= 1e-14);
  }
  {
    const RegressionContextd ctx(embed32());
    CHECK(max_norm_diff(recover(ctx, DataObjectd(v({5, 7, 9}))).value(), v({5, 7})) <= 1e-12);
  }
}

TEST_CASE("recover on morphisms averages the translation") {
  const RegressionContextd ctx(two_ones());
  const DataObjectd y(v({0, 0}));
  const PrmMorphismd image = recover(ctx, DataMorphismd(y, v({2, 4})));
  CHECK(max_norm_diff(image.delta(), v({3})) <= 1e-14);
}

TEST_CASE("dimension mismatches are rejected") {
  const RegressionContextd ctx(two_ones());
  CHECK_THROWS_AS(forward(ctx, PrmObjectd(v({1, 2}))), DimensionError);
  CHECK_THROWS_AS(recover(ctx, DataObjectd(v({1, 2, 3}))), DimensionError);
}

TEST_CASE("functor laws hold on random contexts") {
  Sampler sampler(77);
  for (int round = 0; round < 10; ++round) {
    const RegressionContextd ctx = sample_context(sampler, 20, 20, true);
    const LawReport report = check_functor_laws(ctx, 50, 1000 + round);
    CHECK(report.all_passed());
    REQUIRE(report.find("functor.forward_identity") != nullptr);
    CHECK(report.find("functor.forward_identity")->max_defect <= kAdditiveLawTol);
    CHECK(report.find("functor.recover_identity")->max_defect <= kAdditiveLawTol);
    CHECK(report.find("functor.forward_composition")->max_defect <= kLinearLawTol);
    CHECK(report.find("functor.recover_composition")->max_defect <= kLinearLawTol);
    CHECK(report.find("functor.forward_coherence")->max_defect <= kLinearLawTol);
    CHECK(report.find("functor.recover_coherence")->max_defect <= kLinearLawTol);
    CHECK(report.find("functor.round_trip_shift")->max_defect <= kLinearLawTol);
  }
}

TEST_CASE("recover after forward is the translation by G b") {
  Sampler sampler(88);
  const RegressionContextd ctx = sample_context(sampler, 12, 6, true);
  const Vecd gb = ctx.left_inv() * ctx.calibration();
  for (int t = 0; t < 50; ++t) {
    const PrmObjectd a(sampler.vec(ctx.param_dim()));
    const Vecd round = recover(ctx, forward(ctx, a)).value();
    CHECK(max_norm_diff(round, Vecd(a.value() + gb)) <= kLinearLawTol);
  }
}

TEST_CASE("a perturbed forward map breaks object/morphism coherence") {
  Sampler sampler(99);
  const RegressionContextd ctx = sample_context(sampler, 10, 4, false);
  const PrmObjectd a(sampler.vec(ctx.param_dim()));
  const PrmMorphismd da(a, sampler.vec(ctx.param_dim()));

  const Matd E = 1e-3 * sampler.mat(ctx.data_dim(), ctx.param_dim());
  // Mutant morphism action: uses X + E while the object action keeps X.
  const Vecd mutant_delta = (ctx.design() + E) * da.delta();
  const double defect =
      max_norm_diff(Vecd(forward(ctx, a).value() + mutant_delta),
                    forward(ctx, da.target()).value());
  CHECK(defect > kLinearLawTol);
}
