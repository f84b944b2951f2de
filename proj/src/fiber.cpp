#include "saw/fiber.hpp"

#include "saw/interval.hpp"

#include <deque>
#include <map>
#include <numeric>

namespace saw {

std::string to_string(Answer a) {
  switch (a) {
    case Answer::In: return "In";
    case Answer::Out: return "Out";
    case Answer::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

enum class Outcome { Member, Empty, Open };

// One basic set after substitution: atoms over `vars` compact variables.
struct Reduced {
  std::size_t vars = 0;
  std::vector<Polynomial> eqs;
  std::vector<Polynomial> gts;
};

// Eliminates equations of the form c*v + r with constant c != 0 by
// substituting v = -r/c everywhere; exact, so membership is unchanged.
void eliminate_pivots(Reduced& d) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t e = 0; e < d.eqs.size() && !changed; ++e) {
      for (std::size_t v = 0; v < d.vars; ++v) {
        if (d.eqs[e].degree_in(v) != 1) continue;
        Polynomial coeff = d.eqs[e].derivative(v);
        if (!coeff.is_constant()) continue;
        Rational c = coeff.constant_term();
        Polynomial rest = d.eqs[e] - Polynomial::variable(d.vars, v) * c;
        Rational inv = -1 / c;
        Polynomial value = rest * inv;
        d.eqs.erase(d.eqs.begin() + static_cast<std::ptrdiff_t>(e));
        for (auto& p : d.eqs) p = p.substitute(v, value);
        for (auto& p : d.gts) p = p.substitute(v, value);
        changed = true;
        break;
      }
    }
  }
}

// Drops true constant atoms; Empty when a constant atom is false.
Outcome fold_constants(Reduced& d) {
  std::vector<Polynomial> eqs, gts;
  for (auto& p : d.eqs) {
    if (!p.is_constant())
      eqs.push_back(std::move(p));
    else if (sgn(p.constant_term()) != 0)
      return Outcome::Empty;
  }
  for (auto& p : d.gts) {
    if (!p.is_constant())
      gts.push_back(std::move(p));
    else if (sgn(p.constant_term()) <= 0)
      return Outcome::Empty;
  }
  d.eqs = std::move(eqs);
  d.gts = std::move(gts);
  return d.eqs.empty() && d.gts.empty() ? Outcome::Member : Outcome::Open;
}

bool excluded(const Reduced& d, const Box& b) {
  for (const auto& p : d.eqs)
    if (!poly_range_tight(p, b).contains_zero()) return true;
  for (const auto& p : d.gts)
    if (sgn(poly_range_tight(p, b).hi) <= 0) return true;
  return false;
}

bool satisfies(const Reduced& d, PointView x) {
  for (const auto& p : d.eqs)
    if (sgn(p.eval(x)) != 0) return false;
  for (const auto& p : d.gts)
    if (sgn(p.eval(x)) <= 0) return false;
  return true;
}

UniPoly along(const Polynomial& p, PointView x, std::size_t var) {
  std::vector<std::optional<Rational>> assign(x.begin(), x.end());
  assign[var] = std::nullopt;
  return UniPoly::from(p.restrict(assign));
}

// Root r of `sq` (squarefree) inside [u, v] certified unique by a sign change
// and a derivative enclosure excluding zero; checks the strict atoms on it.
bool certify_root_interval(const Reduced& d, PointView x, std::size_t var, const UniPoly& sq, Rational u, Rational v) {
  UniPoly dq = sq.derivative();
  std::vector<UniPoly> gts;
  for (const auto& p : d.gts) gts.push_back(along(p, x, var));
  int su = sgn(sq.eval(u));
  for (int step = 0; step < 48; ++step) {
    Interval iv(u, v);
    if (!dq.range(iv).contains_zero()) {
      bool ok = true;
      for (const auto& g : gts)
        if (sgn(g.range(iv).lo) <= 0) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
    Rational m = (u + v) / 2;
    int sm = sgn(sq.eval(m));
    if (sm == 0) {
      Point y(x.begin(), x.end());
      y[var] = m;
      return satisfies(d, y);
    }
    if (sm == su)
      u = m;
    else
      v = m;
  }
  return false;
}

// Searches for a root of the equations along `var` through x, over side.
bool root_along(const Reduced& d, PointView x, std::size_t var, const Interval& side, std::size_t grid) {
  UniPoly g;
  for (const auto& p : d.eqs) g = UniPoly::gcd(g, along(p, x, var));
  Point y(x.begin(), x.end());
  if (g.is_zero()) return satisfies(d, y);
  if (g.degree() == 0) return false;
  UniPoly sq = g.squarefree();
  if (sq.degree() == 1) {
    y[var] = -sq.coeffs()[0] / sq.coeffs()[1];
    return satisfies(d, y);
  }
  Rational step = side.width() / static_cast<long>(grid);
  Rational prev_t = side.lo;
  int prev = sgn(sq.eval(prev_t));
  for (std::size_t k = 0; k <= grid; ++k) {
    Rational t = side.lo + step * static_cast<long>(k);
    int s = sgn(sq.eval(t));
    if (s == 0) {
      y[var] = t;
      if (satisfies(d, y)) return true;
    } else if (prev != 0 && s != prev && k > 0) {
      if (certify_root_interval(d, x, var, sq, prev_t, t)) return true;
    }
    prev = s;
    prev_t = t;
  }
  return false;
}

Outcome search_box(const Reduced& d, const Box& root, std::size_t budget, std::size_t grid) {
  std::vector<std::size_t> eq_vars;
  for (std::size_t v = 0; v < d.vars; ++v)
    for (const auto& p : d.eqs)
      if (p.uses(v)) {
        eq_vars.push_back(v);
        break;
      }
  std::deque<Box> queue{root};
  std::size_t examined = 0;
  while (!queue.empty()) {
    if (examined++ >= budget) return Outcome::Open;
    Box b = std::move(queue.front());
    queue.pop_front();
    if (excluded(d, b)) continue;
    Point c = b.center();
    if (d.eqs.empty()) {
      if (satisfies(d, c)) return Outcome::Member;
    } else {
      for (std::size_t v : eq_vars)
        if (root_along(d, c, v, b.side(v), grid)) return Outcome::Member;
    }
    auto [l, r] = b.bisect();
    queue.push_back(std::move(l));
    queue.push_back(std::move(r));
  }
  return Outcome::Empty;
}

Outcome decide_disjunct(const BasicSet& basic, std::span<const std::optional<Rational>> fixed,
                        std::span<const std::optional<Interval>> bounds, const FiberOptions& options) {
  Reduced d;
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < fixed.size(); ++i)
    if (!fixed[i]) free.push_back(i);
  d.vars = free.size();
  for (const auto& p : basic.equations) d.eqs.push_back(p.restrict(fixed));
  for (const auto& p : basic.strict_positives) d.gts.push_back(p.restrict(fixed));
  if (Outcome o = fold_constants(d); o != Outcome::Open) return o;
  eliminate_pivots(d);
  if (Outcome o = fold_constants(d); o != Outcome::Open) return o;

  // Atoms sharing no variable are decided independently: the disjunct is
  // inhabited iff every group of linked atoms is.
  std::vector<std::size_t> group(d.vars);
  std::iota(group.begin(), group.end(), 0);
  auto find = [&](std::size_t v) {
    while (group[v] != v) v = group[v] = group[group[v]];
    return v;
  };
  auto link_atom = [&](const Polynomial& p) {
    std::optional<std::size_t> first;
    for (std::size_t v = 0; v < d.vars; ++v) {
      if (!p.uses(v)) continue;
      if (first)
        group[find(v)] = find(*first);
      else
        first = v;
    }
    return *first;
  };
  std::map<std::size_t, Reduced> parts;
  for (const auto& p : d.eqs) link_atom(p);
  for (const auto& p : d.gts) link_atom(p);
  for (const auto& p : d.eqs) parts[find(link_atom(p))].eqs.push_back(p);
  for (const auto& p : d.gts) parts[find(link_atom(p))].gts.push_back(p);

  bool open = false;
  for (auto& [root, part] : parts) {
    std::vector<std::size_t> active, target(d.vars, 0);
    for (std::size_t v = 0; v < d.vars; ++v)
      if (find(v) == root) {
        target[v] = active.size();
        active.push_back(v);
      }
    Reduced c;
    c.vars = active.size();
    for (const auto& p : part.eqs) c.eqs.push_back(p.remap(c.vars, target));
    for (const auto& p : part.gts) c.gts.push_back(p.remap(c.vars, target));
    std::vector<Rational> lo, hi;
    for (std::size_t v : active) {
      const auto& side = bounds[free[v]];
      if (!side) throw Error("fiber search: coordinate " + std::to_string(free[v] + 1) + " has no declared bound");
      lo.push_back(side->lo);
      // A point enclosure still lies in the closure of a wider box.
      hi.push_back(side->hi > side->lo ? side->hi : side->lo + 1);
    }
    Outcome o = search_box(c, Box(lo, hi), options.cert_budget, options.root_grid);
    if (o == Outcome::Empty) return o;
    open = open || o == Outcome::Open;
  }
  return open ? Outcome::Open : Outcome::Member;
}

}  // namespace

Answer fiber_search(const SemiAlgebraicSet& k, std::span<const std::optional<Rational>> fixed,
                    std::span<const std::optional<Interval>> bounds, const FiberOptions& options) {
  require_dim(fixed.size(), k.num_vars(), "fiber_search");
  require_dim(bounds.size(), k.num_vars(), "fiber_search bounds");
  bool all_empty = true;
  for (const auto& basic : k.disjuncts()) {
    Outcome o = decide_disjunct(basic, fixed, bounds, options);
    if (o == Outcome::Member) return Answer::In;
    all_empty = all_empty && o == Outcome::Empty;
  }
  return all_empty ? Answer::Out : Answer::Unknown;
}

}  // namespace saw
