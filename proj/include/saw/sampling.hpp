#pragma once

#include "saw/geometry.hpp"

#include <cstdint>
#include <random>

namespace saw {

/// Seeded generator with a fully specified output sequence; the mapping to
/// rationals avoids implementation-defined distributions so that samples are
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Dyadic rational lo + (hi - lo) * k / 2^bits with k uniform in [0, 2^bits].
  Rational uniform(const Rational& lo, const Rational& hi, unsigned bits = 20);
  /// Dyadic point strictly inside the open box.
  Point in_box(const Box& b, unsigned bits = 20);
  double unit_double();
  std::int64_t integer(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

/// Radical inverse of `index` in `base`: an exact rational in [0, 1).
Rational radical_inverse(std::uint64_t index, unsigned base);

/// Halton point `index` (starting at 1) mapped into the open box.
Point halton_point(const Box& b, std::uint64_t index);

/// Derives an independent seed from a base seed and a stream label.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace saw
