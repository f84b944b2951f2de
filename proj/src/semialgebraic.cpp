#include "saw/semialgebraic.hpp"

#include <algorithm>
#include <numeric>

namespace saw {

BasicSet::BasicSet(std::size_t n, std::vector<Polynomial> eqs, std::vector<Polynomial> gts)
    : num_vars(n), equations(std::move(eqs)), strict_positives(std::move(gts)) {
  for (const auto& p : equations) require_dim(p.num_vars(), n, "BasicSet equation");
  for (const auto& p : strict_positives) require_dim(p.num_vars(), n, "BasicSet strict inequality");
}

bool BasicSet::contains(PointView p) const {
  for (const auto& f : equations)
    if (sgn(f.eval(p)) != 0) return false;
  for (const auto& g : strict_positives)
    if (sgn(g.eval(p)) <= 0) return false;
  return true;
}

namespace {

Polynomial canonical_equation(const Polynomial& f) {
  Polynomial p = f.primitive();
  if (!p.is_zero() && sgn(p.terms().rbegin()->second) < 0) p = -p;
  return p;
}

template <class T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool subsumes(const BasicSet& weaker, const BasicSet& stronger) {
  return std::includes(stronger.equations.begin(), stronger.equations.end(), weaker.equations.begin(),
                       weaker.equations.end()) &&
         std::includes(stronger.strict_positives.begin(), stronger.strict_positives.end(),
                       weaker.strict_positives.begin(), weaker.strict_positives.end());
}

// Sorts, deduplicates and drops disjuncts contained in a weaker sibling.
std::vector<BasicSet> absorb(std::vector<BasicSet> ds) {
  sort_unique(ds);
  std::sort(ds.begin(), ds.end(), [](const BasicSet& a, const BasicSet& b) {
    if (a.atom_count() != b.atom_count()) return a.atom_count() < b.atom_count();
    return a < b;
  });
  std::vector<BasicSet> kept;
  for (auto& d : ds) {
    bool redundant = std::any_of(kept.begin(), kept.end(), [&](const BasicSet& k) { return subsumes(k, d); });
    if (!redundant) kept.push_back(std::move(d));
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

void append_unique(std::vector<Point>& out, const Point& p) {
  if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
}

std::optional<BasicSet> merge(const BasicSet& a, const BasicSet& b) {
  BasicSet m(a.num_vars);
  m.equations = a.equations;
  m.equations.insert(m.equations.end(), b.equations.begin(), b.equations.end());
  m.strict_positives = a.strict_positives;
  m.strict_positives.insert(m.strict_positives.end(), b.strict_positives.begin(), b.strict_positives.end());
  return m.normalized();
}

}  // namespace

std::optional<BasicSet> BasicSet::normalized() const {
  BasicSet out(num_vars);
  for (const auto& f : equations) {
    if (f.is_constant()) {
      if (sgn(f.constant_term()) != 0) return std::nullopt;
      continue;
    }
    out.equations.push_back(canonical_equation(f));
  }
  for (const auto& g : strict_positives) {
    if (g.is_constant()) {
      if (sgn(g.constant_term()) <= 0) return std::nullopt;
      continue;
    }
    out.strict_positives.push_back(g.primitive());
  }
  sort_unique(out.equations);
  sort_unique(out.strict_positives);
  for (const auto& g : out.strict_positives) {
    if (std::binary_search(out.equations.begin(), out.equations.end(), canonical_equation(g))) return std::nullopt;
    if (std::binary_search(out.strict_positives.begin(), out.strict_positives.end(), (-g).primitive()))
      return std::nullopt;
  }
  return out;
}

SemiAlgebraicSet::SemiAlgebraicSet(std::size_t num_vars, std::vector<BasicSet> disjuncts, std::optional<Box> bound,
                                   std::vector<Point> distinguished)
    : num_vars_(num_vars), bound_(std::move(bound)) {
  std::vector<BasicSet> normal;
  for (auto& d : disjuncts) {
    require_dim(d.num_vars, num_vars, "SemiAlgebraicSet disjunct");
    if (auto n = d.normalized()) normal.push_back(std::move(*n));
  }
  disjuncts_ = absorb(std::move(normal));
  if (bound_) require_dim(bound_->dim(), num_vars, "SemiAlgebraicSet bound");
  for (auto& p : distinguished) {
    require_dim(p.size(), num_vars, "SemiAlgebraicSet distinguished point");
    if (!contains(p)) throw Error("distinguished point " + to_string(p) + " is not a member of the set");
    append_unique(points_, p);
  }
}

SemiAlgebraicSet SemiAlgebraicSet::universe(std::size_t n) { return SemiAlgebraicSet(n, {BasicSet(n)}); }

SemiAlgebraicSet SemiAlgebraicSet::from_basic(BasicSet b) {
  std::size_t n = b.num_vars;
  return SemiAlgebraicSet(n, {std::move(b)});
}

bool SemiAlgebraicSet::contains(PointView p) const {
  require_dim(p.size(), num_vars_, "sa_member");
  return std::any_of(disjuncts_.begin(), disjuncts_.end(), [&](const BasicSet& d) { return d.contains(p); });
}

SemiAlgebraicSet SemiAlgebraicSet::with_bound(std::optional<Box> bound) const {
  SemiAlgebraicSet r = *this;
  if (bound) require_dim(bound->dim(), num_vars_, "SemiAlgebraicSet bound");
  r.bound_ = std::move(bound);
  return r;
}

SemiAlgebraicSet SemiAlgebraicSet::clipped(const Box& box) const {
  require_dim(box.dim(), num_vars_, "SemiAlgebraicSet::clipped");
  BasicSet walls(num_vars_);
  for (std::size_t i = 0; i < num_vars_; ++i) {
    Polynomial x = Polynomial::variable(num_vars_, i);
    walls.strict_positives.push_back(x - Polynomial::constant(num_vars_, box.lo(i)));
    walls.strict_positives.push_back(Polynomial::constant(num_vars_, box.hi(i)) - x);
  }
  std::vector<BasicSet> ds;
  for (const auto& d : disjuncts_)
    if (auto m = merge(d, walls)) ds.push_back(std::move(*m));
  std::vector<Point> pts;
  for (const auto& p : points_)
    if (box.contains_open(p)) pts.push_back(p);
  std::optional<Box> bound = box;
  if (bound_) bound = bound_->intersect(box);
  if (!bound) return SemiAlgebraicSet(num_vars_);
  return SemiAlgebraicSet(num_vars_, std::move(ds), bound, std::move(pts));
}

SemiAlgebraicSet SemiAlgebraicSet::with_points(std::vector<Point> points) const {
  return SemiAlgebraicSet(num_vars_, disjuncts_, bound_, std::move(points));
}

Rational poly_eval(const Polynomial& p, PointView point) { return p.eval(point); }

bool sa_member(const SemiAlgebraicSet& x, PointView point) { return x.contains(point); }

SemiAlgebraicSet sa_union(const SemiAlgebraicSet& x, const SemiAlgebraicSet& y) {
  require_dim(y.num_vars(), x.num_vars(), "sa_union");
  std::vector<BasicSet> ds = x.disjuncts();
  ds.insert(ds.end(), y.disjuncts().begin(), y.disjuncts().end());
  std::optional<Box> bound;
  if (x.is_trivially_empty())
    bound = y.declared_bound();
  else if (y.is_trivially_empty())
    bound = x.declared_bound();
  else if (x.declared_bound() && y.declared_bound())
    bound = x.declared_bound()->hull(*y.declared_bound());
  std::vector<Point> pts = x.distinguished_points();
  for (const auto& p : y.distinguished_points()) append_unique(pts, p);
  return SemiAlgebraicSet(x.num_vars(), std::move(ds), bound, std::move(pts));
}

SemiAlgebraicSet sa_intersect(const SemiAlgebraicSet& x, const SemiAlgebraicSet& y, std::size_t budget) {
  require_dim(y.num_vars(), x.num_vars(), "sa_intersect");
  std::vector<BasicSet> ds;
  for (const auto& a : x.disjuncts())
    for (const auto& b : y.disjuncts()) {
      if (auto m = merge(a, b)) ds.push_back(std::move(*m));
      if (ds.size() > budget)
        throw BudgetExhausted("sa_intersect: disjunct budget " + std::to_string(budget) + " exceeded");
    }
  std::optional<Box> bound;
  if (x.declared_bound() && y.declared_bound()) {
    bound = x.declared_bound()->intersect(*y.declared_bound());
    if (!bound) return SemiAlgebraicSet(x.num_vars());
  } else {
    bound = x.declared_bound() ? x.declared_bound() : y.declared_bound();
  }
  std::vector<Point> pts;
  for (const auto& p : x.distinguished_points())
    if (y.contains(p)) append_unique(pts, p);
  for (const auto& p : y.distinguished_points())
    if (x.contains(p)) append_unique(pts, p);
  return SemiAlgebraicSet(x.num_vars(), std::move(ds), bound, std::move(pts));
}

SemiAlgebraicSet sa_complement(const SemiAlgebraicSet& x, std::size_t budget) {
  const std::size_t n = x.num_vars();
  SemiAlgebraicSet acc = SemiAlgebraicSet::universe(n);
  for (const auto& d : x.disjuncts()) {
    // Negation of one basic set: a disjunction of single-atom basic sets.
    std::vector<BasicSet> neg;
    for (const auto& f : d.equations) {
      neg.push_back(BasicSet(n, {}, {f}));
      neg.push_back(BasicSet(n, {}, {-f}));
    }
    for (const auto& g : d.strict_positives) {
      neg.push_back(BasicSet(n, {g}, {}));
      neg.push_back(BasicSet(n, {}, {-g}));
    }
    acc = sa_intersect(acc, SemiAlgebraicSet(n, std::move(neg)), budget);
    if (acc.is_trivially_empty()) break;
  }
  return acc;
}

SemiAlgebraicSet sa_difference(const SemiAlgebraicSet& x, const SemiAlgebraicSet& y, std::size_t budget) {
  require_dim(y.num_vars(), x.num_vars(), "sa_difference");
  if (x.is_trivially_empty()) return SemiAlgebraicSet(x.num_vars());
  SemiAlgebraicSet r = sa_intersect(x, sa_complement(y, budget), budget);
  std::vector<Point> pts;
  for (const auto& p : x.distinguished_points())
    if (!y.contains(p)) pts.push_back(p);
  return SemiAlgebraicSet(x.num_vars(), r.disjuncts(), x.declared_bound(), std::move(pts));
}

SemiAlgebraicSet sa_product(const SemiAlgebraicSet& x, const SemiAlgebraicSet& y, std::size_t budget) {
  const std::size_t nx = x.num_vars(), ny = y.num_vars(), n = nx + ny;
  std::vector<BasicSet> ds;
  for (const auto& a : x.disjuncts())
    for (const auto& b : y.disjuncts()) {
      BasicSet m(n);
      for (const auto& f : a.equations) m.equations.push_back(f.shifted(n, 0));
      for (const auto& g : a.strict_positives) m.strict_positives.push_back(g.shifted(n, 0));
      for (const auto& f : b.equations) m.equations.push_back(f.shifted(n, nx));
      for (const auto& g : b.strict_positives) m.strict_positives.push_back(g.shifted(n, nx));
      ds.push_back(std::move(m));
      if (ds.size() > budget)
        throw BudgetExhausted("sa_product: disjunct budget " + std::to_string(budget) + " exceeded");
    }
  std::optional<Box> bound;
  if (x.declared_bound() && y.declared_bound()) bound = x.declared_bound()->concat(*y.declared_bound());
  std::vector<Point> pts;
  for (const auto& p : x.distinguished_points())
    for (const auto& q : y.distinguished_points()) {
      Point pq = p;
      pq.insert(pq.end(), q.begin(), q.end());
      pts.push_back(std::move(pq));
    }
  return SemiAlgebraicSet(n, std::move(ds), bound, std::move(pts));
}

SemiAlgebraicSet sa_cylinder(const SemiAlgebraicSet& x, std::size_t new_num_vars,
                             std::span<const std::size_t> target) {
  std::vector<BasicSet> ds;
  for (const auto& d : x.disjuncts()) {
    BasicSet m(new_num_vars);
    for (const auto& f : d.equations) m.equations.push_back(f.remap(new_num_vars, target));
    for (const auto& g : d.strict_positives) m.strict_positives.push_back(g.remap(new_num_vars, target));
    ds.push_back(std::move(m));
  }
  return SemiAlgebraicSet(new_num_vars, std::move(ds));
}

namespace {

Polynomial sphere_polynomial(const AffineMap& tau, std::size_t n) {
  require_dim(tau.dim(), n, "sphere_of");
  Polynomial p = Polynomial::constant(n, -tau.scale() * tau.scale());
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial d = Polynomial::variable(n, i) - Polynomial::constant(n, tau.translation()[i]);
    p += d * d;
  }
  return p;
}

// The shapes touch the closed box of radius scale; the open bound is inflated.
const Rational kShapeBoundInflate(5, 4);

}  // namespace

SemiAlgebraicSet sphere_of(const AffineMap& tau, std::size_t n) {
  return SemiAlgebraicSet(n, {BasicSet(n, {sphere_polynomial(tau, n)}, {})}, tau.ball_bounding_box(kShapeBoundInflate));
}

SemiAlgebraicSet ball_of(const AffineMap& tau, std::size_t n) {
  Polynomial p = sphere_polynomial(tau, n);
  return SemiAlgebraicSet(n, {BasicSet(n, {p}, {}), BasicSet(n, {}, {-p})},
                          tau.ball_bounding_box(kShapeBoundInflate), {tau.translation()});
}

SemiAlgebraicSet dotted_sphere_of(const AffineMap& tau, std::size_t n) {
  BasicSet center(n);
  for (std::size_t i = 0; i < n; ++i)
    center.equations.push_back(Polynomial::variable(n, i) - Polynomial::constant(n, tau.translation()[i]));
  return SemiAlgebraicSet(n, {BasicSet(n, {sphere_polynomial(tau, n)}, {}), center},
                          tau.ball_bounding_box(kShapeBoundInflate), {tau.translation()});
}

SemiAlgebraicSet sa_image(const SemiAlgebraicSet& x, const AffineMap& tau) {
  const std::size_t n = x.num_vars();
  require_dim(tau.dim(), n, "sa_image");
  std::vector<BasicSet> ds;
  for (const auto& d : x.disjuncts()) {
    BasicSet m(n);
    for (const auto& f : d.equations) m.equations.push_back(f.compose_affine(tau));
    for (const auto& g : d.strict_positives) m.strict_positives.push_back(g.compose_affine(tau));
    ds.push_back(std::move(m));
  }
  std::optional<Box> bound;
  if (x.declared_bound()) {
    Point lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = tau.scale() * x.declared_bound()->lo(i) + tau.translation()[i];
      hi[i] = tau.scale() * x.declared_bound()->hi(i) + tau.translation()[i];
    }
    bound = Box(lo, hi);
  }
  std::vector<Point> pts;
  for (const auto& p : x.distinguished_points()) pts.push_back(tau.apply(p));
  return SemiAlgebraicSet(n, std::move(ds), bound, std::move(pts));
}

std::string describe(const SemiAlgebraicSet& x) {
  if (x.disjuncts().empty()) return "{}";
  std::string out;
  for (std::size_t k = 0; k < x.disjuncts().size(); ++k) {
    if (k) out += " | ";
    const auto& d = x.disjuncts()[k];
    out += "{";
    bool first = true;
    for (const auto& f : d.equations) {
      out += (first ? "" : ", ") + f.to_string() + " = 0";
      first = false;
    }
    for (const auto& g : d.strict_positives) {
      out += (first ? "" : ", ") + g.to_string() + " > 0";
      first = false;
    }
    if (first) out += "true";
    out += "}";
  }
  return out;
}

}  // namespace saw
