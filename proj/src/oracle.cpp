#include "saw/oracle.hpp"

#include "saw/sampling.hpp"

#include <algorithm>

namespace saw {

MembershipOracle::MembershipOracle(std::size_t arity, Query query, std::string provenance)
    : bounds(arity), arity_(arity), query_(std::move(query)), provenance_(std::move(provenance)) {}

MembershipOracle MembershipOracle::of_set(const SemiAlgebraicSet& x, std::string provenance) {
  auto held = std::make_shared<const SemiAlgebraicSet>(x);
  MembershipOracle o(x.num_vars(), [held](PointView p) { return sa_member(*held, p) ? Answer::In : Answer::Out; },
                     std::move(provenance));
  o.hints = x.distinguished_points();
  o.closed_form = x;
  o.bounds = bounds_of(x);
  return o;
}

Answer MembershipOracle::operator()(PointView p) const {
  require_dim(p.size(), arity_, "membership query");
  return query_(p);
}

namespace {

constexpr std::size_t kMaxHints = 64;

std::optional<Interval> tighten(const std::optional<Interval>& a, const std::optional<Interval>& b) {
  if (a && b) return a->intersect(*b).value_or(*a);
  return a ? a : b;
}

void add_hints(std::vector<Point>& into, const std::vector<Point>& more) {
  for (const auto& p : more) {
    if (into.size() >= kMaxHints) return;
    if (std::find(into.begin(), into.end(), p) == into.end()) into.push_back(p);
  }
}

bool outside(const CoordBounds& b, PointView y) {
  for (std::size_t j = 0; j < y.size(); ++j)
    if (b[j] && !b[j]->contains(y[j])) return true;
  return false;
}

// pi_out(k): the set of y with y_j = z_{out[j]} for a member z of k.
struct Lifted {
  SemiAlgebraicSet k;
  std::vector<std::size_t> out;
  CoordBounds kb;
  std::vector<Point> hints;

  bool identity() const {
    if (out.size() != k.num_vars()) return false;
    for (std::size_t i = 0; i < out.size(); ++i)
      if (out[i] != i) return false;
    return true;
  }
  CoordBounds out_bounds() const {
    CoordBounds b;
    for (std::size_t i : out) b.push_back(kb[i]);
    return b;
  }
  std::vector<Point> out_hints() const {
    std::vector<Point> h;
    for (const auto& z : hints) {
      Point y;
      for (std::size_t i : out) y.push_back(z[i]);
      add_hints(h, {y});
    }
    return h;
  }
};

Lifted leaf(const SemiAlgebraicSet& x) {
  Lifted l{x, {}, bounds_of(x), x.distinguished_points()};
  for (std::size_t i = 0; i < x.num_vars(); ++i) l.out.push_back(i);
  return l;
}

struct Built {
  std::size_t arity = 0;
  std::optional<Lifted> lifted;
  MembershipOracle::Query query;
  CoordBounds bounds;
  std::vector<Point> hints;
};

MembershipOracle::Query lifted_query(const Lifted& l, const OracleOptions& options, const std::string& what) {
  if (l.identity()) {
    auto k = std::make_shared<const SemiAlgebraicSet>(l.k);
    return [k](PointView p) { return sa_member(*k, p) ? Answer::In : Answer::Out; };
  }
  CoordBounds kb = l.kb;
  std::vector<bool> shown(l.k.num_vars(), false);
  for (std::size_t i : l.out) shown[i] = true;
  for (std::size_t i = 0; i < kb.size(); ++i) {
    if (kb[i] || shown[i]) continue;
    bool used = false;
    for (const auto& d : l.k.disjuncts()) {
      for (const auto& p : d.equations) used = used || p.uses(i);
      for (const auto& p : d.strict_positives) used = used || p.uses(i);
    }
    if (!used) continue;
    if (!options.search_range)
      throw Error("missing bound declaration: projected-away coordinate " + std::to_string(i + 1) + " of " + what);
    kb[i] = options.search_range;
  }
  struct Data {
    SemiAlgebraicSet k;
    std::vector<std::size_t> out;
    CoordBounds kb;
    CoordBounds ob;
    FiberOptions fiber;
  };
  auto data = std::make_shared<const Data>(Data{l.k, l.out, kb, l.out_bounds(), options.fiber});
  return [data](PointView y) {
    if (outside(data->ob, y)) return Answer::Out;
    std::vector<std::optional<Rational>> fixed(data->k.num_vars());
    for (std::size_t j = 0; j < y.size(); ++j) {
      auto& slot = fixed[data->out[j]];
      if (slot && *slot != y[j]) return Answer::Out;
      slot = y[j];
    }
    return fiber_search(data->k, fixed, data->kb, data->fiber);
  };
}

Built from_lifted(Lifted l) {
  Built b;
  b.arity = l.out.size();
  b.bounds = l.out_bounds();
  b.hints = l.out_hints();
  b.lifted = std::move(l);
  return b;
}

MembershipOracle::Query query_of(const Built& b, const OracleOptions& options, const std::string& what) {
  return b.lifted ? lifted_query(*b.lifted, options, what) : b.query;
}

std::vector<Point> member_hints(const std::vector<Point>& hints, const SemiAlgebraicSet& k) {
  std::vector<Point> out;
  for (const auto& h : hints)
    if (sa_member(k, h)) out.push_back(h);
  return out;
}

std::vector<Point> paired_hints(const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<Point> out;
  for (const auto& x : a)
    for (const auto& y : b) {
      if (out.size() >= kMaxHints) return out;
      Point z = x;
      z.insert(z.end(), y.begin(), y.end());
      out.push_back(std::move(z));
    }
  return out;
}

// a ∩ b for lifted operands of equal output arity.
Lifted intersect_lifted(const Lifted& a, const Lifted& b) {
  if (a.identity() && b.identity()) {
    Lifted r{sa_intersect(a.k, b.k), a.out, a.kb, {}};
    for (std::size_t i = 0; i < r.kb.size(); ++i) r.kb[i] = tighten(a.kb[i], b.kb[i]);
    r.hints = a.hints;
    add_hints(r.hints, b.hints);
    r.hints = member_hints(r.hints, r.k);
    return r;
  }
  if (a.identity() || b.identity()) {
    const Lifted& plain = a.identity() ? a : b;
    const Lifted& hidden = a.identity() ? b : a;
    Lifted r{sa_intersect(hidden.k, sa_cylinder(plain.k, hidden.k.num_vars(), hidden.out)), hidden.out, hidden.kb, {}};
    for (std::size_t j = 0; j < hidden.out.size(); ++j) r.kb[hidden.out[j]] = tighten(r.kb[hidden.out[j]], plain.kb[j]);
    r.hints = member_hints(hidden.hints, r.k);
    return r;
  }
  // Both hidden: work in the product space and link the shown coordinates.
  std::size_t qa = a.k.num_vars(), q = qa + b.k.num_vars();
  BasicSet link(q);
  for (std::size_t j = 0; j < a.out.size(); ++j)
    link.equations.push_back(Polynomial::variable(q, a.out[j]) - Polynomial::variable(q, qa + b.out[j]));
  Lifted r{sa_intersect(sa_product(a.k, b.k), SemiAlgebraicSet::from_basic(link)), a.out, a.kb, {}};
  r.kb.insert(r.kb.end(), b.kb.begin(), b.kb.end());
  for (std::size_t j = 0; j < a.out.size(); ++j) {
    auto t = tighten(r.kb[a.out[j]], r.kb[qa + b.out[j]]);
    r.kb[a.out[j]] = t;
    r.kb[qa + b.out[j]] = t;
  }
  r.hints = member_hints(paired_hints(a.hints, b.hints), r.k);
  return r;
}

Lifted product_lifted(const Lifted& a, const Lifted& b) {
  std::size_t qa = a.k.num_vars();
  Lifted r{sa_product(a.k, b.k), a.out, a.kb, paired_hints(a.hints, b.hints)};
  for (std::size_t i : b.out) r.out.push_back(qa + i);
  r.kb.insert(r.kb.end(), b.kb.begin(), b.kb.end());
  return r;
}

CoordBounds hull(const CoordBounds& a, const CoordBounds& b) {
  CoordBounds r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) r[i] = Interval(std::min(a[i]->lo, b[i]->lo), std::max(a[i]->hi, b[i]->hi));
  return r;
}

Built kleene(NodeKind kind, const Built& a, const Built& b, const OracleOptions& options, const std::string& what) {
  auto qa = query_of(a, options, what), qb = query_of(b, options, what);
  Built r;
  r.arity = kind == NodeKind::Product ? a.arity + b.arity : a.arity;
  r.hints = a.hints;
  switch (kind) {
    case NodeKind::Union:
      r.query = [qa, qb](PointView p) {
        Answer x = qa(p);
        if (x == Answer::In) return x;
        Answer y = qb(p);
        if (y == Answer::In) return y;
        return x == Answer::Out && y == Answer::Out ? Answer::Out : Answer::Unknown;
      };
      r.bounds = hull(a.bounds, b.bounds);
      add_hints(r.hints, b.hints);
      break;
    case NodeKind::Intersection:
      r.query = [qa, qb](PointView p) {
        Answer x = qa(p);
        if (x == Answer::Out) return x;
        Answer y = qb(p);
        if (y == Answer::Out) return y;
        return x == Answer::In && y == Answer::In ? Answer::In : Answer::Unknown;
      };
      r.bounds = a.bounds;
      for (std::size_t i = 0; i < r.bounds.size(); ++i) r.bounds[i] = tighten(a.bounds[i], b.bounds[i]);
      add_hints(r.hints, b.hints);
      break;
    case NodeKind::Difference:
      r.query = [qa, qb](PointView p) {
        Answer x = qa(p);
        if (x == Answer::Out) return x;
        Answer y = qb(p);
        if (y == Answer::In) return Answer::Out;
        return x == Answer::In && y == Answer::Out ? Answer::In : Answer::Unknown;
      };
      r.bounds = a.bounds;
      break;
    case NodeKind::Product: {
      std::size_t m = a.arity;
      r.query = [qa, qb, m](PointView p) {
        Answer x = qa(p.subspan(0, m));
        if (x == Answer::Out) return x;
        Answer y = qb(p.subspan(m));
        if (y == Answer::Out) return y;
        return x == Answer::In && y == Answer::In ? Answer::In : Answer::Unknown;
      };
      r.bounds = a.bounds;
      r.bounds.insert(r.bounds.end(), b.bounds.begin(), b.bounds.end());
      r.hints = paired_hints(a.hints, b.hints);
      break;
    }
    default: throw Error("kleene: unexpected node kind");
  }
  return r;
}

// Projection of a child that could not be lifted: sample the hidden
// coordinates; only In can be established this way.
Built sampled_projection(const std::vector<std::size_t>& indices, const Built& child, const OracleOptions& options,
                         const std::string& what) {
  std::vector<bool> shown(child.arity, false);
  for (std::size_t i : indices) shown[i] = true;
  std::vector<std::size_t> hidden;
  std::vector<Rational> lo, hi;
  for (std::size_t i = 0; i < child.arity; ++i) {
    if (shown[i]) continue;
    auto side = child.bounds[i] ? child.bounds[i] : options.search_range;
    if (!side) throw Error("missing bound declaration: projected-away coordinate " + std::to_string(i + 1) + " of " + what);
    hidden.push_back(i);
    lo.push_back(side->lo);
    // A degenerate side still needs an open box for Halton sampling.
    hi.push_back(side->hi > side->lo ? side->hi : side->lo + 1);
  }
  Built r;
  r.arity = indices.size();
  for (std::size_t i : indices) r.bounds.push_back(child.bounds[i]);
  for (const auto& h : child.hints) {
    Point y;
    for (std::size_t i : indices) y.push_back(h[i]);
    add_hints(r.hints, {y});
  }
  auto q = query_of(child, options, what);
  auto hints = child.hints;
  std::optional<Box> box;
  if (!hidden.empty()) box = Box(lo, hi);
  std::size_t budget = options.sample_budget;
  CoordBounds ob = r.bounds;
  std::size_t m = child.arity;
  r.query = [q, hints, box, budget, indices, hidden, ob, m](PointView y) {
    if (outside(ob, y)) return Answer::Out;
    Point x(m);
    std::vector<bool> set(m, false);
    for (std::size_t j = 0; j < indices.size(); ++j) {
      if (set[indices[j]] && x[indices[j]] != y[j]) return Answer::Out;
      x[indices[j]] = y[j];
      set[indices[j]] = true;
    }
    for (const auto& h : hints) {
      bool match = true;
      for (std::size_t j = 0; j < indices.size() && match; ++j) match = h[indices[j]] == y[j];
      if (match && q(h) == Answer::In) return Answer::In;
    }
    if (!box) return q(x);
    for (std::size_t k = 1; k <= budget; ++k) {
      Point z = halton_point(*box, k);
      for (std::size_t t = 0; t < hidden.size(); ++t) x[hidden[t]] = z[t];
      if (q(x) == Answer::In) return Answer::In;
    }
    return Answer::Unknown;
  };
  return r;
}

Built build(const Expr& e, const SemiAlgebraicSet& s, const OracleOptions& options);

Built build_projection(const Expr& e, const SemiAlgebraicSet& s, const OracleOptions& options) {
  const Expr& child = e->left;
  if (child->kind == NodeKind::Union)
    return build(make_binary(NodeKind::Union, make_projection(e->indices, child->left),
                             make_projection(e->indices, child->right)),
                 s, options);
  if (child->kind == NodeKind::Projection) {
    std::vector<std::size_t> composed;
    for (std::size_t i : e->indices) composed.push_back(child->indices[i]);
    return build(make_projection(std::move(composed), child->left), s, options);
  }
  Built b = build(child, s, options);
  if (!b.lifted) return sampled_projection(e->indices, b, options, to_string(e));
  Lifted l = std::move(*b.lifted);
  std::vector<std::size_t> out;
  for (std::size_t i : e->indices) out.push_back(l.out[i]);
  l.out = std::move(out);
  return from_lifted(std::move(l));
}

Built build(const Expr& e, const SemiAlgebraicSet& s, const OracleOptions& options) {
  switch (e->kind) {
    case NodeKind::Input:
      require_dim(s.num_vars(), e->arity, "input set");
      return from_lifted(leaf(s));
    case NodeKind::Constant: return from_lifted(leaf(*e->set));
    case NodeKind::Projection: return build_projection(e, s, options);
    default: break;
  }
  Built a = build(e->left, s, options), b = build(e->right, s, options);
  std::string what = to_string(e);
  if (a.lifted && b.lifted) {
    const Lifted &la = *a.lifted, &lb = *b.lifted;
    try {
      switch (e->kind) {
        case NodeKind::Union:
          if (la.identity() && lb.identity()) {
            Lifted r{sa_union(la.k, lb.k), la.out, hull(la.kb, lb.kb), la.hints};
            if (la.k.is_trivially_empty()) r.kb = lb.kb;
            if (lb.k.is_trivially_empty()) r.kb = la.kb;
            add_hints(r.hints, lb.hints);
            return from_lifted(std::move(r));
          }
          break;
        case NodeKind::Difference:
          if (la.identity() && lb.identity()) {
            Lifted r{sa_difference(la.k, lb.k), la.out, la.kb, {}};
            r.hints = member_hints(la.hints, r.k);
            return from_lifted(std::move(r));
          }
          break;
        case NodeKind::Intersection: return from_lifted(intersect_lifted(la, lb));
        case NodeKind::Product: return from_lifted(product_lifted(la, lb));
        default: break;
      }
    } catch (const BudgetExhausted&) {
      // Fall through to combining the operands' answers.
    }
  }
  return kleene(e->kind, a, b, options, what);
}

}  // namespace

MembershipOracle projected_oracle(SemiAlgebraicSet k, std::vector<std::size_t> out, CoordBounds k_bounds,
                                  const OracleOptions& options, std::string provenance) {
  require_dim(k_bounds.size(), k.num_vars(), "projected_oracle bounds");
  for (std::size_t i : out)
    if (i >= k.num_vars()) throw DimensionMismatch("projected_oracle: index out of range");
  Lifted l{std::move(k), std::move(out), std::move(k_bounds), {}};
  l.hints = l.k.distinguished_points();
  MembershipOracle o(l.out.size(), lifted_query(l, options, provenance), provenance);
  o.bounds = l.out_bounds();
  o.hints = l.out_hints();
  if (l.identity()) o.closed_form = l.k;
  return o;
}

MembershipOracle eval_oracle(const Expr& e, const SemiAlgebraicSet& s, const OracleOptions& options) {
  Built b = build(e, s, options);
  std::string what = to_string(e);
  MembershipOracle o(b.arity, query_of(b, options, what), what);
  o.bounds = b.bounds;
  o.hints = b.hints;
  if (b.lifted && b.lifted->identity()) o.closed_form = b.lifted->k;
  return o;
}

}  // namespace saw
