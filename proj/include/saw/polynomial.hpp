#pragma once

#include "saw/geometry.hpp"
#include "saw/rational.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace saw {

/// Sparse multivariate polynomial with exact rational coefficients.
/// Variables are indexed 0..num_vars-1 and printed as x1..xN.
class Polynomial {
 public:
  using Exponents = std::vector<unsigned>;
  using Terms = std::map<Exponents, Rational>;

  explicit Polynomial(std::size_t num_vars = 0) : num_vars_(num_vars) {}
  Polynomial(std::size_t num_vars, Terms terms);

  static Polynomial constant(std::size_t num_vars, const Rational& c);
  static Polynomial variable(std::size_t num_vars, std::size_t var);

  std::size_t num_vars() const { return num_vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  unsigned degree() const;
  unsigned degree_in(std::size_t var) const;
  bool uses(std::size_t var) const { return degree_in(var) > 0; }

  Rational eval(PointView point) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial pow(unsigned k) const;

  Polynomial derivative(std::size_t var) const;

  /// Renames variable i to target[i] in a space of new_num_vars variables.
  /// The map need not be injective (x1,x2 -> x1,x1 is a diagonal restriction).
  Polynomial remap(std::size_t new_num_vars, std::span<const std::size_t> target) const;
  /// Shifts every variable index by `offset` inside new_num_vars variables.
  Polynomial shifted(std::size_t new_num_vars, std::size_t offset) const;

  /// Replaces variable `var` by `value` (a polynomial in the same variables).
  Polynomial substitute(std::size_t var, const Polynomial& value) const;

  /// Fixes the variables with an assigned value and renumbers the remaining
  /// ones compactly in increasing order.
  Polynomial restrict(std::span<const std::optional<Rational>> assign) const;

  /// p((x - t) / s) * s^deg(p): the image condition of p under x -> s x + t.
  Polynomial compose_affine(const AffineMap& tau) const;

  /// Taylor coefficients at `center`: q(h) = p(center + h).
  Polynomial shift_to(PointView center) const;

  /// Positive rational multiple with coprime integer coefficients; sign of
  /// every value is preserved.
  Polynomial primitive() const;

  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;
  friend std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b);

 private:
  void add_term(const Exponents& e, const Rational& c);

  std::size_t num_vars_;
  Terms terms_;
};

/// Parses "x1^2 + 2*x1*x2 - 3/4" style text. Variables are x1..x<num_vars>.
Polynomial parse_polynomial(std::string_view text, std::size_t num_vars);

/// Dense univariate polynomial, coefficients from the constant term up.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  /// Requires p to use at most variable 0 of a one-variable space.
  static UniPoly from(const Polynomial& p);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational eval(const Rational& x) const;
  Interval range(const Interval& x) const;
  UniPoly derivative() const;

  /// Monic gcd; gcd(0, 0) = 0.
  static UniPoly gcd(UniPoly a, UniPoly b);
  static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
  UniPoly squarefree() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

}  // namespace saw
