#pragma once

#include "saw/rational.hpp"

#include <optional>
#include <vector>

namespace saw {

/// Closed rational interval [lo, hi].
struct Interval {
  Rational lo;
  Rational hi;

  Interval() = default;
  Interval(Rational l, Rational h);
  static Interval point(const Rational& v) { return {v, v}; }

  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator*(const Rational& c, const Interval& a);
  friend bool operator==(const Interval& a, const Interval& b) = default;

  Interval pow(unsigned k) const;
  std::optional<Interval> intersect(const Interval& o) const;
};

/// Open axis-aligned box with rational corners; lo_i < hi_i for every i.
class Box {
 public:
  Box() = default;
  Box(std::vector<Rational> lo, std::vector<Rational> hi);
  static Box cube(std::size_t n, const Rational& lo, const Rational& hi);

  std::size_t dim() const { return lo_.size(); }
  const Rational& lo(std::size_t i) const { return lo_[i]; }
  const Rational& hi(std::size_t i) const { return hi_[i]; }
  Interval side(std::size_t i) const { return {lo_[i], hi_[i]}; }
  Rational width(std::size_t i) const { return hi_[i] - lo_[i]; }
  Point center() const;
  std::size_t widest() const;
  Rational min_width() const;

  bool contains_open(PointView p) const;
  bool contains_closed(PointView p) const;
  /// Subset test on closures (equivalently on the open boxes).
  bool contains_box(const Box& other) const;
  std::pair<Box, Box> bisect(std::size_t axis) const;
  std::pair<Box, Box> bisect() const { return bisect(widest()); }
  std::optional<Box> intersect(const Box& other) const;
  Box hull(const Box& other) const;
  Box select(std::span<const std::size_t> axes) const;
  Box concat(const Box& other) const;
  Box scaled_about_center(const Rational& factor) const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<Rational> lo_;
  std::vector<Rational> hi_;
};

std::string to_string(const Box& b);

/// x -> scale * x + translation, scale > 0 (uniform scaling).
class AffineMap {
 public:
  AffineMap(Rational scale, Point translation);
  static AffineMap identity(std::size_t n);

  const Rational& scale() const { return scale_; }
  const Point& translation() const { return translation_; }
  std::size_t dim() const { return translation_.size(); }

  Point apply(PointView q) const;
  Point inverse(PointView x) const;
  /// Axis box of the image of the closed unit ball.
  Box ball_bounding_box(const Rational& inflate = 1) const;

  friend bool operator==(const AffineMap&, const AffineMap&) = default;

 private:
  Rational scale_;
  Point translation_;
};

std::string to_string(const AffineMap& t);

}  // namespace saw
