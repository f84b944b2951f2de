#include "saw/sampling.hpp"

#include <array>

namespace saw {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error("Rng::below(0)");
  // Rejection keeps the distribution exactly uniform.
  std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
  std::uint64_t v;
  do v = engine_();
  while (v >= limit);
  return v % n;
}

Rational Rng::uniform(const Rational& lo, const Rational& hi, unsigned bits) {
  std::uint64_t steps = std::uint64_t(1) << bits;
  std::uint64_t k = below(steps + 1);
  Rational t(mpz_class(static_cast<unsigned long>(k)), mpz_class(static_cast<unsigned long>(steps)));
  t.canonicalize();
  return lo + (hi - lo) * t;
}

Point Rng::in_box(const Box& b, unsigned bits) {
  std::uint64_t steps = std::uint64_t(1) << bits;
  Point p(b.dim());
  for (std::size_t i = 0; i < b.dim(); ++i) {
    std::uint64_t k = 1 + below(steps - 1);
    Rational t(mpz_class(static_cast<unsigned long>(k)), mpz_class(static_cast<unsigned long>(steps)));
    t.canonicalize();
    p[i] = b.lo(i) + b.width(i) * t;
  }
  return p;
}

double Rng::unit_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

Rational radical_inverse(std::uint64_t index, unsigned base) {
  mpz_class num = 0, den = 1;
  while (index > 0) {
    num = num * base + (index % base);
    den *= base;
    index /= base;
  }
  // Digits were accumulated in reversed order already: num / den.
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Point halton_point(const Box& b, std::uint64_t index) {
  static constexpr std::array<unsigned, 12> kPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (b.dim() > kPrimes.size()) throw Error("halton_point: dimension too large");
  Point p(b.dim());
  for (std::size_t i = 0; i < b.dim(); ++i) {
    Rational t = radical_inverse(index, kPrimes[i]);
    if (sgn(t) == 0) t = Rational(1, 2);
    p[i] = b.lo(i) + b.width(i) * t;
  }
  return p;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace saw
