#pragma once

#include "saw/geometry.hpp"
#include "saw/polynomial.hpp"

#include <optional>
#include <vector>

namespace saw {

inline constexpr std::size_t kDefaultDisjunctBudget = 4096;

/// { x : f(x) = 0 for every equation, g(x) > 0 for every strict positive }.
struct BasicSet {
  std::size_t num_vars = 0;
  std::vector<Polynomial> equations;
  std::vector<Polynomial> strict_positives;

  BasicSet() = default;
  explicit BasicSet(std::size_t n) : num_vars(n) {}
  BasicSet(std::size_t n, std::vector<Polynomial> eqs, std::vector<Polynomial> gts);

  bool contains(PointView p) const;
  bool is_universe() const { return equations.empty() && strict_positives.empty(); }
  std::size_t atom_count() const { return equations.size() + strict_positives.size(); }

  /// Canonical form: primitive polynomials, sorted, deduplicated, trivially
  /// true atoms dropped. nullopt when the atoms are trivially contradictory.
  std::optional<BasicSet> normalized() const;

  friend bool operator==(const BasicSet&, const BasicSet&) = default;
  friend auto operator<=>(const BasicSet& a, const BasicSet& b) {
    if (auto c = a.equations <=> b.equations; c != 0) return c;
    return a.strict_positives <=> b.strict_positives;
  }
};

/// Finite union of basic sets. The declared bound, when present, is an open
/// box promised to contain the set; only sampling and fiber search use it.
class SemiAlgebraicSet {
 public:
  explicit SemiAlgebraicSet(std::size_t num_vars = 0) : num_vars_(num_vars) {}
  SemiAlgebraicSet(std::size_t num_vars, std::vector<BasicSet> disjuncts, std::optional<Box> bound = std::nullopt,
                   std::vector<Point> distinguished = {});

  static SemiAlgebraicSet empty(std::size_t n) { return SemiAlgebraicSet(n); }
  static SemiAlgebraicSet universe(std::size_t n);
  static SemiAlgebraicSet from_basic(BasicSet b);

  std::size_t num_vars() const { return num_vars_; }
  const std::vector<BasicSet>& disjuncts() const { return disjuncts_; }
  const std::optional<Box>& declared_bound() const { return bound_; }
  const std::vector<Point>& distinguished_points() const { return points_; }
  bool is_trivially_empty() const { return disjuncts_.empty(); }

  bool contains(PointView p) const;

  SemiAlgebraicSet with_bound(std::optional<Box> bound) const;
  /// Intersects every disjunct with the open box and records it as bound.
  SemiAlgebraicSet clipped(const Box& box) const;
  SemiAlgebraicSet with_points(std::vector<Point> points) const;

  friend bool operator==(const SemiAlgebraicSet&, const SemiAlgebraicSet&) = default;

 private:
  std::size_t num_vars_;
  std::vector<BasicSet> disjuncts_;
  std::optional<Box> bound_;
  std::vector<Point> points_;
};

Rational poly_eval(const Polynomial& p, PointView point);
bool sa_member(const SemiAlgebraicSet& x, PointView point);

SemiAlgebraicSet sa_union(const SemiAlgebraicSet& x, const SemiAlgebraicSet& y);
SemiAlgebraicSet sa_intersect(const SemiAlgebraicSet& x, const SemiAlgebraicSet& y,
                              std::size_t budget = kDefaultDisjunctBudget);
SemiAlgebraicSet sa_complement(const SemiAlgebraicSet& x, std::size_t budget = kDefaultDisjunctBudget);
SemiAlgebraicSet sa_difference(const SemiAlgebraicSet& x, const SemiAlgebraicSet& y,
                               std::size_t budget = kDefaultDisjunctBudget);
/// Variables of y are placed after those of x.
SemiAlgebraicSet sa_product(const SemiAlgebraicSet& x, const SemiAlgebraicSet& y,
                            std::size_t budget = kDefaultDisjunctBudget);

/// Renames variable i of x to target[i] in a space of new_num_vars variables;
/// the result is the preimage cylinder { z : (z[target[0]], ...) in x }.
SemiAlgebraicSet sa_cylinder(const SemiAlgebraicSet& x, std::size_t new_num_vars,
                             std::span<const std::size_t> target);

/// tau(unit sphere), tau(closed unit ball), tau(unit sphere plus center).
SemiAlgebraicSet sphere_of(const AffineMap& tau, std::size_t n);
SemiAlgebraicSet ball_of(const AffineMap& tau, std::size_t n);
SemiAlgebraicSet dotted_sphere_of(const AffineMap& tau, std::size_t n);

/// Image of x under tau: membership of tau(q) equals membership of q.
SemiAlgebraicSet sa_image(const SemiAlgebraicSet& x, const AffineMap& tau);

std::string describe(const SemiAlgebraicSet& x);

}  // namespace saw
