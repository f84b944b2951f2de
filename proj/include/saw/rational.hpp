#pragma once

#include <gmpxx.h>

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace saw {

using Rational = mpq_class;
using Point = std::vector<Rational>;
using PointView = std::span<const Rational>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct BudgetExhausted : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

/// Canonical text: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);
std::string to_string(PointView p);

/// Accepts "p", "-p", "p/q" and finite decimals such as "0.25".
Rational parse_rational(std::string_view text);

inline int sign(const Rational& q) { return sgn(q); }

double to_double(const Rational& q);

void require_dim(std::size_t got, std::size_t want, const char* what);

}  // namespace saw
