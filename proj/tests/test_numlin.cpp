#include <Eigen/Eigenvalues>
#include <limits>

#include "doctest.h"
#include "gma/numlin.hpp"
#include "gma/rng.hpp"
#include "oracles.hpp"

using namespace gma;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
const double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

TEST_CASE("require_finite rejects NaN and Inf") {
  Vecd v(2);
  v << 1.0, 2.0;
  CHECK_NOTHROW(require_finite(v, "v"));
  v[1] = kNaN;
  CHECK_THROWS_AS(require_finite(v, "v"), NonFiniteError);
  v[1] = kInf;
  CHECK_THROWS_AS(require_finite(v, "v"), NonFiniteError);
}

TEST_CASE("singular_value_ratio on pinned cases") {
  CHECK(singular_value_ratio(Matd(Matd::Identity(2, 2))) == doctest::Approx(1.0));

  Matd dup(2, 2);
  dup << 1, 1, 1, 1;
  CHECK(singular_value_ratio(dup) <= kRankRelTol);

  Matd near_dup(2, 2);
  near_dup << 1, 1, 1, 1 + 1e-15;
  CHECK(singular_value_ratio(near_dup) <= kRankRelTol);
  CHECK_FALSE(has_full_column_rank(near_dup));
}

TEST_CASE("singular_value_ratio matches the closed-form 2x2 oracle") {
  Sampler sampler(101);
  for (int t = 0; t < 300; ++t) {
    const Matd M = sampler.mat(2, 2);
    const double got = singular_value_ratio(M);
    const double want = oracle::sv_ratio_2x2(M);
    CHECK(std::abs(got - want) <= 1e-9);
  }
}

TEST_CASE("rank predicate on pinned cases") {
  CHECK(has_full_column_rank(Matd(Matd::Identity(2, 2))));
  Matd dup(2, 2);
  dup << 1, 1, 1, 1;
  CHECK_FALSE(has_full_column_rank(dup));
}

TEST_CASE("left_inverse on pinned cases") {
  const Matd I2 = Matd::Identity(2, 2);
  CHECK(max_norm_diff(Matd(left_inverse(I2)), I2) <= 1e-14);

  Matd embed(3, 2);
  embed << 1, 0, 0, 1, 0, 0;
  CHECK(max_norm_diff(Matd(left_inverse(embed)), Matd(embed.transpose())) <= 1e-12);

  Matd ones(2, 1);
  ones << 1, 1;
  Matd half(1, 2);
  half << 0.5, 0.5;
  CHECK(max_norm_diff(Matd(left_inverse(ones)), half) <= 1e-14);
}

TEST_CASE("left_inverse error paths") {
  Matd wide(1, 2);
  wide << 1, 2;
  CHECK_THROWS_AS(left_inverse(wide), DimensionError);

  Matd dup(3, 2);
  dup << 1, 1, 2, 2, 3, 3;
  CHECK_THROWS_AS(left_inverse(dup), RankDeficientError);
}

TEST_CASE("GX = I and the oracle solve on random instances") {
  Sampler sampler(202);
  for (int t = 0; t < 100; ++t) {
    const Index n = sampler.uniform_index(1, 20);
    const Index m = sampler.uniform_index(1, n);
    Matd X = sampler.mat(n, m);
    while (!has_full_column_rank(X)) X = sampler.mat(n, m);

    const Matd G = left_inverse(X);
    CHECK(max_norm_diff(Matd(G * X), Matd(Matd::Identity(m, m))) <= 1e-9);

    const Vecd y = sampler.vec(n);
    const Vecd a_lib = G * y;
    const Vecd a_oracle = oracle::normal_equations(X, y);
    const double rel =
        (a_lib - a_oracle).norm() / std::max(1.0, a_oracle.norm());
    CHECK(rel <= 1e-8);
  }
}

TEST_CASE("projection on pinned cases") {
  const Matd I2 = Matd::Identity(2, 2);
  CHECK(max_norm_diff(Matd(projection(I2, left_inverse(I2))), I2) <= 1e-14);

  Matd ones(2, 1);
  ones << 1, 1;
  Matd half(2, 2);
  half << 0.5, 0.5, 0.5, 0.5;
  CHECK(max_norm_diff(Matd(projection(ones, left_inverse(ones))), half) <= 1e-14);

  Matd embed(3, 2);
  embed << 1, 0, 0, 1, 0, 0;
  Matd diag110 = Matd::Zero(3, 3);
  diag110(0, 0) = diag110(1, 1) = 1;
  CHECK(max_norm_diff(Matd(projection(embed, left_inverse(embed))), diag110) <= 1e-12);
}

TEST_CASE("projection is idempotent and symmetric, with PX = X") {
  Sampler sampler(303);
  for (int t = 0; t < 50; ++t) {
    const Index n = sampler.uniform_index(2, 20);
    const Index m = sampler.uniform_index(1, n);
    Matd X = sampler.mat(n, m);
    while (!has_full_column_rank(X)) X = sampler.mat(n, m);
    const Matd P = projection(X, left_inverse(X));
    CHECK(max_norm_diff(Matd(P * P), P) <= 1e-9);
    CHECK(max_norm_diff(Matd(P.transpose()), P) <= 1e-9);
    CHECK(max_norm_diff(Matd(P * X), X) <= 1e-9);
  }
}

TEST_CASE("gram_spectral_radius on pinned cases") {
  Matd ones(2, 1);
  ones << 1, 1;
  CHECK(gram_spectral_radius(ones) == doctest::Approx(2.0).epsilon(1e-8));

  CHECK(gram_spectral_radius(Matd(Matd::Identity(2, 2))) ==
        doctest::Approx(1.0).epsilon(1e-8));

  Matd rect(3, 2);
  rect << 3, 0, 0, 4, 0, 0;
  CHECK(gram_spectral_radius(rect) == doctest::Approx(16.0).epsilon(1e-8));
}

TEST_CASE("gram_spectral_radius matches a dense eigensolver") {
  Sampler sampler(404);
  for (int t = 0; t < 50; ++t) {
    const Index n = sampler.uniform_index(1, 15);
    const Index m = sampler.uniform_index(1, 15);
    const Matd X = sampler.mat(n, m);
    if (X.norm() == 0.0) continue;
    Eigen::SelfAdjointEigenSolver<Matd> es(Matd(X * X.transpose()));
    const double want = es.eigenvalues().maxCoeff();
    const double got = gram_spectral_radius(X);
    CHECK(std::abs(got - want) <= 1e-7 * std::max(1.0, want));
  }
}

TEST_CASE("gram_spectral_radius dominates Rayleigh probes") {
  Sampler sampler(505);
  const Matd X = sampler.mat(8, 3);
  const double lam = gram_spectral_radius(X);
  for (int t = 0; t < 50; ++t) {
    const Vecd v = sampler.vec(3);
    if (v.norm() == 0.0) continue;
    const double quot = (X * v).squaredNorm() / v.squaredNorm();
    CHECK(lam >= quot - 1e-8 * std::max(1.0, quot));
  }
}

TEST_CASE("gram_spectral_radius rejects the zero matrix") {
  CHECK_THROWS_AS(gram_spectral_radius(Matd(Matd::Zero(3, 2))),
                  std::invalid_argument);
}
