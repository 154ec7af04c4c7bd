#pragma once

#include <cstdint>
#include <random>

#include "splitfix/vector.hpp"

namespace splitfix {

/// Seeded generator whose real draws are bit-identical on every platform.
/// std::uniform_real_distribution is implementation-defined, so the mapping
/// from 64-bit words to doubles is done here.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  Vector uniform_vector(std::size_t dim, double lo, double hi) {
    Vector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  std::uint64_t next() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

}  // namespace splitfix
