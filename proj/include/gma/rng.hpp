#pragma once

#include <cstdint>
#include <random>

#include "gma/types.hpp"

namespace gma {

/// Seeded uniform sampler. Draws bits from mt19937_64 and maps them to
/// doubles directly, so a given seed yields the same stream on every
/// platform (no reliance on std::uniform_real_distribution internals).
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// Uniform integer in [lo, hi].
  long uniform_index(long lo, long hi) {
    return lo + static_cast<long>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Vecd vec(Index dim, double lo = -1.0, double hi = 1.0) {
    Vecd v(dim);
    for (Index i = 0; i < dim; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  Matd mat(Index rows, Index cols, double lo = -1.0, double hi = 1.0) {
    Matd m(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) m(i, j) = uniform(lo, hi);
    return m;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gma
