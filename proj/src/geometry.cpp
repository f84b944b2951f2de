#include "saw/geometry.hpp"

#include <algorithm>

namespace saw {

Interval::Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (hi < lo) throw Error("interval with lo > hi");
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  Rational lo = std::min({p1, p2, p3, p4});
  Rational hi = std::max({p1, p2, p3, p4});
  return {lo, hi};
}

Interval operator*(const Rational& c, const Interval& a) {
  if (sgn(c) >= 0) return {c * a.lo, c * a.hi};
  return {c * a.hi, c * a.lo};
}

Interval Interval::pow(unsigned k) const {
  if (k == 0) return point(1);
  Rational plo = 1, phi = 1;
  for (unsigned i = 0; i < k; ++i) {
    plo *= lo;
    phi *= hi;
  }
  if (k % 2 == 1) return {plo, phi};
  if (sgn(lo) >= 0) return {plo, phi};
  if (sgn(hi) <= 0) return {phi, plo};
  return {Rational(0), std::max(plo, phi)};
}

std::optional<Interval> Interval::intersect(const Interval& o) const {
  Rational l = std::max(lo, o.lo), h = std::min(hi, o.hi);
  if (h < l) return std::nullopt;
  return Interval{l, h};
}

Box::Box(std::vector<Rational> lo, std::vector<Rational> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  require_dim(hi_.size(), lo_.size(), "Box");
  for (std::size_t i = 0; i < lo_.size(); ++i)
    if (!(lo_[i] < hi_[i])) throw Error("Box: empty side on axis " + std::to_string(i + 1));
}

Box Box::cube(std::size_t n, const Rational& lo, const Rational& hi) {
  return Box(std::vector<Rational>(n, lo), std::vector<Rational>(n, hi));
}

Point Box::center() const {
  Point c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = (lo_[i] + hi_[i]) / 2;
  return c;
}

std::size_t Box::widest() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < dim(); ++i)
    if (width(i) > width(best)) best = i;
  return best;
}

Rational Box::min_width() const {
  Rational w = width(0);
  for (std::size_t i = 1; i < dim(); ++i) w = std::min(w, width(i));
  return w;
}

bool Box::contains_open(PointView p) const {
  require_dim(p.size(), dim(), "Box::contains_open");
  for (std::size_t i = 0; i < dim(); ++i)
    if (!(lo_[i] < p[i] && p[i] < hi_[i])) return false;
  return true;
}

bool Box::contains_closed(PointView p) const {
  require_dim(p.size(), dim(), "Box::contains_closed");
  for (std::size_t i = 0; i < dim(); ++i)
    if (p[i] < lo_[i] || hi_[i] < p[i]) return false;
  return true;
}

bool Box::contains_box(const Box& other) const {
  require_dim(other.dim(), dim(), "Box::contains_box");
  for (std::size_t i = 0; i < dim(); ++i)
    if (other.lo_[i] < lo_[i] || hi_[i] < other.hi_[i]) return false;
  return true;
}

std::pair<Box, Box> Box::bisect(std::size_t axis) const {
  Rational m = (lo_[axis] + hi_[axis]) / 2;
  Box left = *this, right = *this;
  left.hi_[axis] = m;
  right.lo_[axis] = m;
  return {std::move(left), std::move(right)};
}

std::optional<Box> Box::intersect(const Box& other) const {
  require_dim(other.dim(), dim(), "Box::intersect");
  std::vector<Rational> lo(dim()), hi(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    lo[i] = std::max(lo_[i], other.lo_[i]);
    hi[i] = std::min(hi_[i], other.hi_[i]);
    if (!(lo[i] < hi[i])) return std::nullopt;
  }
  return Box(std::move(lo), std::move(hi));
}

Box Box::hull(const Box& other) const {
  require_dim(other.dim(), dim(), "Box::hull");
  std::vector<Rational> lo(dim()), hi(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    lo[i] = std::min(lo_[i], other.lo_[i]);
    hi[i] = std::max(hi_[i], other.hi_[i]);
  }
  return Box(std::move(lo), std::move(hi));
}

Box Box::select(std::span<const std::size_t> axes) const {
  std::vector<Rational> lo, hi;
  for (std::size_t a : axes) {
    if (a >= dim()) throw DimensionMismatch("Box::select: axis out of range");
    lo.push_back(lo_[a]);
    hi.push_back(hi_[a]);
  }
  return Box(std::move(lo), std::move(hi));
}

Box Box::concat(const Box& other) const {
  std::vector<Rational> lo = lo_, hi = hi_;
  lo.insert(lo.end(), other.lo_.begin(), other.lo_.end());
  hi.insert(hi.end(), other.hi_.begin(), other.hi_.end());
  return Box(std::move(lo), std::move(hi));
}

Box Box::scaled_about_center(const Rational& factor) const {
  std::vector<Rational> lo(dim()), hi(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    Rational c = (lo_[i] + hi_[i]) / 2, h = width(i) / 2 * factor;
    lo[i] = c - h;
    hi[i] = c + h;
  }
  return Box(std::move(lo), std::move(hi));
}

std::string to_string(const Box& b) {
  std::string out;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    if (i) out += " x ";
    out += "(" + b.lo(i).get_str() + ", " + b.hi(i).get_str() + ")";
  }
  return out;
}

AffineMap::AffineMap(Rational scale, Point translation) : scale_(std::move(scale)), translation_(std::move(translation)) {
  if (sgn(scale_) <= 0) throw Error("AffineMap: scale must be positive");
}

AffineMap AffineMap::identity(std::size_t n) { return AffineMap(1, Point(n, Rational(0))); }

Point AffineMap::apply(PointView q) const {
  require_dim(q.size(), dim(), "AffineMap::apply");
  Point x(dim());
  for (std::size_t i = 0; i < dim(); ++i) x[i] = scale_ * q[i] + translation_[i];
  return x;
}

Point AffineMap::inverse(PointView x) const {
  require_dim(x.size(), dim(), "AffineMap::inverse");
  Point q(dim());
  for (std::size_t i = 0; i < dim(); ++i) q[i] = (x[i] - translation_[i]) / scale_;
  return q;
}

Box AffineMap::ball_bounding_box(const Rational& inflate) const {
  std::vector<Rational> lo(dim()), hi(dim());
  Rational r = scale_ * inflate;
  for (std::size_t i = 0; i < dim(); ++i) {
    lo[i] = translation_[i] - r;
    hi[i] = translation_[i] + r;
  }
  return Box(std::move(lo), std::move(hi));
}

std::string to_string(const AffineMap& t) {
  return "scale " + t.scale().get_str() + ", translation " + to_string(t.translation());
}

}  // namespace saw
