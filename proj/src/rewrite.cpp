#include "saw/rewrite.hpp"

#include <algorithm>
#include <variant>

namespace saw {

Expr eliminate_intersection(const Expr& e) {
  switch (e->kind) {
    case NodeKind::Input:
    case NodeKind::Constant: return e;
    case NodeKind::Projection: {
      Expr c = eliminate_intersection(e->left);
      return c == e->left ? e : make_projection(e->indices, c);
    }
    case NodeKind::Intersection: {
      Expr l = eliminate_intersection(e->left), r = eliminate_intersection(e->right);
      return make_binary(NodeKind::Difference, l, make_binary(NodeKind::Difference, l, r));
    }
    default: {
      Expr l = eliminate_intersection(e->left), r = eliminate_intersection(e->right);
      return l == e->left && r == e->right ? e : make_binary(e->kind, l, r);
    }
  }
}

std::string to_string(FormKind k) {
  switch (k) {
    case FormKind::ConstOnly: return "Gamma";
    case FormKind::InputOnly: return "S";
    case FormKind::InputUnionConst: return "S | Gamma";
    case FormKind::ConstMinusInput: return "Gamma \\ S";
  }
  return "?";
}

std::string to_string(const NormalForm& f) {
  std::string s = to_string(f.kind);
  if (f.kind != FormKind::InputOnly) s += "  where Gamma = " + describe(f.gamma);
  return s;
}

Expr NormalForm::to_expr(const std::string& name) const {
  std::size_t n = gamma.num_vars();
  switch (kind) {
    case FormKind::ConstOnly: return make_constant(name, gamma);
    case FormKind::InputOnly: return make_input(n);
    case FormKind::InputUnionConst: return make_binary(NodeKind::Union, make_input(n), make_constant(name, gamma));
    case FormKind::ConstMinusInput:
      return make_binary(NodeKind::Difference, make_constant(name, gamma), make_input(n));
  }
  throw Error("NormalForm::to_expr: bad kind");
}

namespace {

using F = FormKind;

struct Normalizer {
  const NormalizeOptions& options;
  std::vector<CellRecord>& trace;
  std::size_t n;
  std::size_t& cert_boxes;

  struct Step {
    NormalForm form;
    Box v;
  };

  bool inside(const SemiAlgebraicSet& gamma, Box& v) const {
    UniformBoxResult r = find_uniform_box({gamma}, v, options.find);
    v = r.v;
    cert_boxes += r.certificates.front().trace.boxes_examined;
    return !r.inside.empty();
  }

  // gamma \ S needs the box inside gamma; a box outside gamma gives gamma.
  NormalForm minus_input(SemiAlgebraicSet gamma, Box& v) const {
    bool in = inside(gamma, v);
    return {in ? F::ConstMinusInput : F::ConstOnly, std::move(gamma)};
  }

  Step combine(NodeKind op, const NormalForm& a, const NormalForm& b, Box v, CellRecord& rec) const {
    const SemiAlgebraicSet &g1 = a.gamma, &g2 = b.gamma;
    auto both = [&] { return sa_union(g1, g2); };
    auto diff = [&] { return sa_difference(g1, g2, options.disjunct_budget); };
    auto none = [&] { return SemiAlgebraicSet::empty(n); };
    // Resolves a two-way cell on `governing` within v.
    auto govern = [&](const SemiAlgebraicSet& governing) {
      bool in = inside(governing, v);
      rec.governing = in ? Containment::FullyIn : Containment::FullyOut;
      return in;
    };
    auto form = [&](F k, SemiAlgebraicSet g) { return Step{{k, std::move(g)}, v}; };
    auto minus = [&](SemiAlgebraicSet g) {
      NormalForm f = minus_input(std::move(g), v);
      return Step{std::move(f), v};
    };

    if (op == NodeKind::Union) {
      switch (a.kind) {
        case F::InputOnly:
          switch (b.kind) {
            case F::InputOnly: return form(F::InputOnly, none());
            case F::ConstOnly:
            case F::InputUnionConst: return form(F::InputUnionConst, g2);
            case F::ConstMinusInput: return form(F::ConstOnly, g2);
          }
          break;
        case F::ConstOnly:
          switch (b.kind) {
            case F::InputOnly: return form(F::InputUnionConst, g1);
            case F::ConstOnly: return form(F::ConstOnly, both());
            case F::InputUnionConst: return form(F::InputUnionConst, both());
            case F::ConstMinusInput:
              if (govern(g1)) return form(F::ConstOnly, both());
              return minus(both());
          }
          break;
        case F::InputUnionConst:
          switch (b.kind) {
            case F::InputOnly: return form(F::InputUnionConst, g1);
            default: return form(F::InputUnionConst, both());
          }
        case F::ConstMinusInput:
          switch (b.kind) {
            case F::InputOnly: return form(F::ConstOnly, g1);
            case F::ConstOnly:
              // The box is already inside g1, so g2 decides the cell.
              if (govern(g2)) return form(F::ConstOnly, both());
              return minus(both());
            case F::InputUnionConst: return form(F::InputUnionConst, both());
            case F::ConstMinusInput: return minus(both());
          }
          break;
      }
    } else {
      switch (a.kind) {
        case F::InputOnly:
          switch (b.kind) {
            case F::InputOnly:
            case F::InputUnionConst: return form(F::ConstOnly, none());
            case F::ConstOnly:
              if (govern(g2)) return form(F::ConstOnly, none());
              return form(F::InputOnly, none());
            case F::ConstMinusInput: return form(F::InputOnly, none());
          }
          break;
        case F::ConstOnly:
          switch (b.kind) {
            case F::InputOnly:
              if (govern(g1)) return form(F::ConstMinusInput, g1);
              return form(F::ConstOnly, g1);
            case F::ConstOnly: return form(F::ConstOnly, diff());
            case F::InputUnionConst: {
              SemiAlgebraicSet d = diff();
              if (govern(d)) return form(F::ConstMinusInput, d);
              return form(F::ConstOnly, d);
            }
            case F::ConstMinusInput:
              if (govern(g1)) return form(F::InputUnionConst, diff());
              return form(F::ConstOnly, diff());
          }
          break;
        case F::InputUnionConst:
          switch (b.kind) {
            case F::InputOnly:
              if (govern(g1)) return form(F::ConstMinusInput, g1);
              return form(F::ConstOnly, g1);
            case F::ConstOnly:
              if (govern(g2)) return form(F::ConstOnly, diff());
              return form(F::InputUnionConst, diff());
            case F::InputUnionConst: {
              SemiAlgebraicSet d = diff();
              if (govern(d)) return form(F::ConstMinusInput, d);
              return form(F::ConstOnly, d);
            }
            case F::ConstMinusInput: return form(F::InputUnionConst, diff());
          }
          break;
        case F::ConstMinusInput:
          switch (b.kind) {
            case F::InputOnly: return minus(g1);
            case F::ConstOnly:
              if (govern(g2)) return form(F::ConstOnly, diff());
              return minus(diff());
            case F::InputUnionConst:
            case F::ConstMinusInput: {
              SemiAlgebraicSet d = diff();
              if (govern(d)) return form(F::ConstMinusInput, d);
              return form(F::ConstOnly, d);
            }
          }
          break;
      }
    }
    throw Error("normalize_cpfree: unhandled table cell");
  }

  Step run(const Expr& e, const Box& u, const std::string& path) {
    switch (e->kind) {
      case NodeKind::Input: return {{F::InputOnly, SemiAlgebraicSet::empty(n)}, u};
      case NodeKind::Constant:
        require_dim(e->arity, n, "normalize_cpfree constant");
        return {{F::ConstOnly, *e->set}, u};
      case NodeKind::Union:
      case NodeKind::Difference: break;
      default: throw Error("normalize_cpfree: unexpected " + std::string(op_symbol(e->kind)) + " at " + path);
    }
    Step l = run(e->left, u, path + "/L");
    Step r = run(e->right, l.v, path + "/R");
    CellRecord rec{path, e->kind, l.form.kind, r.form.kind, F::InputOnly, std::nullopt};
    Step out;
    try {
      out = combine(e->kind, l.form, r.form, r.v, rec);
    } catch (const BudgetExhausted& ex) {
      throw BudgetExhausted("at " + path + " (" + to_string(l.form.kind) + " " + op_symbol(e->kind) + " " +
                            to_string(r.form.kind) + "): " + ex.what());
    }
    rec.result = out.form.kind;
    trace.push_back(std::move(rec));
    return out;
  }
};

}  // namespace

NormalizeResult normalize_cpfree(const Expr& e, const Box& u, const NormalizeOptions& options) {
  Classification c = classify(e);
  if (!c.cartesian_product_free || !c.projection_free)
    throw Error("normalize_cpfree: expression must be product-free and projection-free: " + to_string(e));
  std::size_t n = u.dim();
  if (e->arity != n) throw ArityError("normalize_cpfree: expression arity differs from the box dimension");
  NormalizeResult result;
  result.v = u;
  Normalizer norm{options, result.trace, n, result.cert_boxes};
  auto step = norm.run(eliminate_intersection(e), u, "root");
  result.form = std::move(step.form);
  result.v = std::move(step.v);
  if (result.form.kind == F::InputOnly) result.form.gamma = SemiAlgebraicSet::empty(n);
  return result;
}

namespace {

void collect(const Expr& e, std::size_t n, std::vector<Component>& out) {
  switch (e->kind) {
    case NodeKind::Union:
    case NodeKind::Difference:
      collect(e->left, n, out);
      collect(e->right, n, out);
      return;
    case NodeKind::Constant: return;
    case NodeKind::Projection: {
      Classification c = classify(e->left);
      Component comp{e->indices, e->left, c.s_occurrences == 0};
      if (!comp.input_free) {
        if (!c.cartesian_product_free) throw Error("extract_components: component uses a product: " + to_string(e));
        if (!c.projection_free) throw Error("extract_components: nested projection in component: " + to_string(e));
        if (e->left->arity != n) throw ArityError("extract_components: component arity differs from input arity");
      }
      out.push_back(std::move(comp));
      return;
    }
    case NodeKind::Intersection: throw Error("extract_components: eliminate intersections first");
    case NodeKind::Product: throw Error("extract_components: outer product");
    case NodeKind::Input: throw Error("extract_components: input set outside any projection");
  }
}

Expr rebuild(const Expr& e, const std::vector<Expr>& bodies, std::size_t& next) {
  switch (e->kind) {
    case NodeKind::Projection: return make_projection(e->indices, bodies.at(next++));
    case NodeKind::Union:
    case NodeKind::Difference: {
      Expr l = rebuild(e->left, bodies, next);
      Expr r = rebuild(e->right, bodies, next);
      return make_binary(e->kind, l, r);
    }
    default: return e;
  }
}

}  // namespace

ComponentDecomposition extract_components(const Expr& e, std::size_t n) {
  if (e->arity + 1 != n)
    throw ArityError("extract_components: expected output arity " + std::to_string(n - 1) + ", got " +
                     std::to_string(e->arity));
  ComponentDecomposition d{e, {}};
  collect(e, n, d.components);
  return d;
}

Expr reassemble(const ComponentDecomposition& d, const std::vector<Expr>& bodies) {
  if (bodies.size() != d.components.size()) throw DimensionMismatch("reassemble: body count");
  std::size_t next = 0;
  return rebuild(d.outer, bodies, next);
}

namespace {

using Links = std::vector<std::pair<std::size_t, std::size_t>>;

std::optional<Interval> tighten(const std::optional<Interval>& a, const std::optional<Interval>& b) {
  if (!a) return b;
  if (!b) return a;
  // Disjoint enclosures mean the coordinate is empty; either bound stays valid.
  return a->intersect(*b).value_or(*a);
}

// A set with a per-coordinate enclosure.
struct Tracked {
  SemiAlgebraicSet set;
  CoordBounds bounds;
};

Tracked tracked(const SemiAlgebraicSet& x) { return {x, bounds_of(x)}; }
Tracked universe(std::size_t n) { return {SemiAlgebraicSet::universe(n), CoordBounds(n)}; }

Tracked t_union(const Tracked& a, const Tracked& b) {
  Tracked r{sa_union(a.set, b.set), {}};
  if (a.set.is_trivially_empty()) {
    r.bounds = b.bounds;
  } else if (b.set.is_trivially_empty()) {
    r.bounds = a.bounds;
  } else {
    r.bounds.resize(a.bounds.size());
    for (std::size_t i = 0; i < a.bounds.size(); ++i)
      if (a.bounds[i] && b.bounds[i])
        r.bounds[i] = Interval(std::min(a.bounds[i]->lo, b.bounds[i]->lo), std::max(a.bounds[i]->hi, b.bounds[i]->hi));
  }
  return r;
}

Tracked t_intersect(const Tracked& a, const Tracked& b, std::size_t budget) {
  Tracked r{sa_intersect(a.set, b.set, budget), a.bounds};
  for (std::size_t i = 0; i < r.bounds.size(); ++i) r.bounds[i] = tighten(r.bounds[i], b.bounds[i]);
  return r;
}

Tracked t_product(const Tracked& a, const Tracked& b, std::size_t budget) {
  Tracked r{sa_product(a.set, b.set, budget), a.bounds};
  r.bounds.insert(r.bounds.end(), b.bounds.begin(), b.bounds.end());
  return r;
}

// { z in R^width : z[target] in c }.
Tracked t_cylinder(const Tracked& c, std::size_t width, const std::vector<std::size_t>& target) {
  Tracked r{sa_cylinder(c.set, width, target), CoordBounds(width)};
  for (std::size_t j = 0; j < target.size(); ++j) r.bounds[target[j]] = tighten(r.bounds[target[j]], c.bounds[j]);
  return r;
}

Tracked t_equal(std::size_t width, const Links& pairs) {
  BasicSet b(width);
  for (auto [x, y] : pairs) b.equations.push_back(Polynomial::variable(width, x) - Polynomial::variable(width, y));
  return {SemiAlgebraicSet::from_basic(std::move(b)), CoordBounds(width)};
}

// Fixes the listed coordinates to 0; used to bound coordinates a branch ignores.
Tracked t_pin(std::size_t width, std::size_t from, std::size_t to) {
  BasicSet b(width);
  CoordBounds bounds(width);
  for (std::size_t i = from; i < to; ++i) {
    b.equations.push_back(Polynomial::variable(width, i));
    bounds[i] = Interval::point(0);
  }
  return {SemiAlgebraicSet::from_basic(std::move(b)), std::move(bounds)};
}

void propagate(CoordBounds& b, const Links& pairs) {
  for (bool changed = true; changed;) {
    changed = false;
    for (auto [x, y] : pairs) {
      auto t = tighten(b[x], b[y]);
      if (t != b[x] || t != b[y]) changed = true;
      b[x] = b[y] = t;
    }
  }
}

// Tracked with the pairs imposed as equations.
Tracked linked(const Tracked& t, const Links& pairs, std::size_t budget) {
  Tracked r = t_intersect(t, t_equal(t.set.num_vars(), pairs), budget);
  propagate(r.bounds, pairs);
  return r;
}

std::vector<std::size_t> iota(std::size_t from, std::size_t count) {
  std::vector<std::size_t> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = from + i;
  return v;
}

std::vector<std::size_t> shifted(const std::vector<std::size_t>& v, std::size_t by) {
  std::vector<std::size_t> r;
  for (std::size_t i : v) r.push_back(i + by);
  return r;
}

// proj_j(k) for an S-free subexpression.
struct Fixed {
  Tracked k;
  std::vector<std::size_t> j;

  std::size_t width() const { return k.set.num_vars(); }
  bool plain() const { return j == iota(0, width()); }
};

// proj_idx(l1 | (l2 & (S x R^k))).
struct Open {
  std::size_t k = 0;
  std::vector<std::size_t> idx;
  Tracked l1, l2;
  Links links2;
};

bool distinct(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

std::vector<std::size_t> compose(const std::vector<std::size_t>& inner, const std::vector<std::size_t>& outer) {
  std::vector<std::size_t> r;
  for (std::size_t i : outer) r.push_back(inner.at(i));
  return r;
}

struct OnePass {
  std::size_t n;
  std::size_t budget;

  std::size_t width(const Open& o) const { return n + o.k; }

  Fixed fixed_product(const Fixed& a, const Fixed& b) const {
    Fixed r{t_product(a.k, b.k, budget), a.j};
    for (std::size_t i : b.j) r.j.push_back(a.width() + i);
    return r;
  }

  Fixed fixed_intersect(const Fixed& a, const Fixed& b) const {
    if (a.plain() && b.plain()) return {t_intersect(a.k, b.k, budget), a.j};
    Links pairs;
    for (std::size_t t = 0; t < a.j.size(); ++t) pairs.emplace_back(a.j[t], a.width() + b.j[t]);
    return {linked(t_product(a.k, b.k, budget), pairs, budget), a.j};
  }

  // Output block v, then a's coordinates, then b's; each branch pins the other's.
  Fixed fixed_union(const Fixed& a, const Fixed& b) const {
    if (a.plain() && b.plain()) return {t_union(a.k, b.k), a.j};
    std::size_t m = a.j.size(), qa = a.width(), qb = b.width(), w = m + qa + qb;
    Links la, lb;
    for (std::size_t t = 0; t < m; ++t) {
      la.emplace_back(t, m + a.j[t]);
      lb.emplace_back(t, m + qa + b.j[t]);
    }
    Tracked ba = t_intersect(t_cylinder(a.k, w, iota(m, qa)), t_pin(w, m + qa, w), budget);
    Tracked bb = t_intersect(t_cylinder(b.k, w, iota(m + qa, qb)), t_pin(w, m, m + qa), budget);
    return {t_union(linked(ba, la, budget), linked(bb, lb, budget)), iota(0, m)};
  }

  Open open_product(Open o, const Fixed& f, bool fixed_first) const {
    std::size_t w = width(o);
    o.l1 = t_product(o.l1, f.k, budget);
    o.l2 = t_product(o.l2, f.k, budget);
    std::vector<std::size_t> fj = shifted(f.j, w);
    if (fixed_first) {
      fj.insert(fj.end(), o.idx.begin(), o.idx.end());
      o.idx = std::move(fj);
    } else {
      o.idx.insert(o.idx.end(), fj.begin(), fj.end());
    }
    o.k += f.width();
    return o;
  }

  Open open_intersect(Open o, const Fixed& f) const {
    std::size_t w = width(o);
    if (f.plain()) {
      Tracked cyl = t_cylinder(f.k, w, o.idx);
      o.l1 = t_intersect(o.l1, cyl, budget);
      o.l2 = t_intersect(o.l2, cyl, budget);
      return o;
    }
    Links pairs;
    for (std::size_t t = 0; t < o.idx.size(); ++t) pairs.emplace_back(o.idx[t], w + f.j[t]);
    o.l1 = linked(t_product(o.l1, f.k, budget), pairs, budget);
    o.l2 = linked(t_product(o.l2, f.k, budget), pairs, budget);
    o.links2.insert(o.links2.end(), pairs.begin(), pairs.end());
    o.k += f.width();
    return o;
  }

  Open open_union(Open o, const Fixed& f) const {
    std::size_t w = width(o);
    if (f.plain() && distinct(o.idx)) {
      Tracked cyl = t_cylinder(f.k, w, o.idx);
      std::vector<bool> used(w, false);
      for (std::size_t i : o.idx) used[i] = true;
      for (std::size_t i = 0; i < w; ++i)
        if (!used[i]) cyl = t_intersect(cyl, t_pin(w, i, i + 1), budget);
      o.l1 = t_union(o.l1, cyl);
      return o;
    }
    // New output block v of size p, then f's coordinates u.
    std::size_t p = o.idx.size(), q = f.width(), w2 = w + p + q;
    Links to_z, to_u;
    for (std::size_t t = 0; t < p; ++t) {
      to_z.emplace_back(w + t, o.idx[t]);
      to_u.emplace_back(w + t, w + p + f.j[t]);
    }
    auto widen = [&](const Tracked& l) {
      return linked(t_intersect(t_product(l, universe(p + q), budget), t_pin(w2, w + p, w2), budget), to_z, budget);
    };
    Tracked from_f = t_intersect(t_cylinder(f.k, w2, iota(w + p, q)), t_pin(w2, 0, w), budget);
    o.l1 = t_union(widen(o.l1), linked(from_f, to_u, budget));
    o.l2 = widen(o.l2);
    o.links2.insert(o.links2.end(), to_z.begin(), to_z.end());
    o.idx = iota(w, p);
    o.k += p + q;
    return o;
  }

  std::variant<Fixed, Open> run(const Expr& e) const {
    switch (e->kind) {
      case NodeKind::Input:
        return Open{0, iota(0, n), {SemiAlgebraicSet::empty(n), CoordBounds(n)}, universe(n), {}};
      case NodeKind::Constant: return Fixed{tracked(*e->set), iota(0, e->arity)};
      case NodeKind::Projection: {
        auto c = run(e->left);
        if (auto* f = std::get_if<Fixed>(&c)) {
          f->j = compose(f->j, e->indices);
        } else {
          auto& o = std::get<Open>(c);
          o.idx = compose(o.idx, e->indices);
        }
        return c;
      }
      case NodeKind::Difference: throw Error("normalize_onepass: difference in a positive expression");
      default: break;
    }
    auto a = run(e->left), b = run(e->right);
    auto* fa = std::get_if<Fixed>(&a);
    auto* fb = std::get_if<Fixed>(&b);
    if (!fa && !fb) throw Error("normalize_onepass: input set occurs more than once");
    switch (e->kind) {
      case NodeKind::Product:
        if (fa && fb) return fixed_product(*fa, *fb);
        return fa ? open_product(std::get<Open>(b), *fa, true) : open_product(std::get<Open>(a), *fb, false);
      case NodeKind::Intersection:
        if (fa && fb) return fixed_intersect(*fa, *fb);
        return fa ? open_intersect(std::get<Open>(b), *fa) : open_intersect(std::get<Open>(a), *fb);
      case NodeKind::Union:
        if (fa && fb) return fixed_union(*fa, *fb);
        return fa ? open_union(std::get<Open>(b), *fa) : open_union(std::get<Open>(a), *fb);
      default: throw Error("normalize_onepass: unexpected node");
    }
  }
};

}  // namespace

OnePassNF normalize_onepass(const Expr& e, std::size_t n, std::size_t budget) {
  if (!classify(e).positive_one_pass)
    throw Error("normalize_onepass: expression is not positive with exactly one input occurrence: " + to_string(e));
  OnePass pass{n, budget};
  Open o = std::get<Open>(pass.run(e));
  return {n, o.k, o.idx, o.l1.set, o.l2.set, o.l1.bounds, o.l2.bounds, o.links2};
}

SemiAlgebraicSet OnePassNF::instantiate(const SemiAlgebraicSet& s, std::size_t budget) const {
  require_dim(s.num_vars(), n, "OnePassNF::instantiate");
  SemiAlgebraicSet lifted = sa_cylinder(s, n + k, iota(0, n));
  return sa_union(lambda1, sa_intersect(lambda2, lifted, budget));
}

CoordBounds OnePassNF::bounds(const SemiAlgebraicSet& s) const {
  CoordBounds b2 = lambda2_bounds;
  CoordBounds bs = bounds_of(s);
  for (std::size_t i = 0; i < n; ++i) b2[i] = tighten(b2[i], bs[i]);
  propagate(b2, lambda2_links);
  if (lambda1.is_trivially_empty()) return b2;
  Tracked a{lambda1, lambda1_bounds}, b{SemiAlgebraicSet::universe(n + k), b2};
  return t_union(a, b).bounds;
}

MembershipOracle OnePassNF::oracle(const SemiAlgebraicSet& s, const OracleOptions& options) const {
  return projected_oracle(instantiate(s), indices, bounds(s), options, to_string(*this));
}

std::string to_string(const OnePassNF& nf) {
  std::string idx;
  for (std::size_t i : nf.indices) idx += (idx.empty() ? "" : ",") + std::to_string(i + 1);
  std::string lifted = nf.k ? "S x R" + std::to_string(nf.k) : "S";
  return "proj[" + idx + "](L1 | (L2 & (" + lifted + ")))  where L1 = " + describe(nf.lambda1) +
         ", L2 = " + describe(nf.lambda2);
}

}  // namespace saw
