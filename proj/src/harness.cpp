#include "saw/harness.hpp"

#include "saw/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <set>
#include <thread>

namespace saw {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "Equal";
    case Verdict::Differ: return "Differ";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

// Runs f(i) for i < n on up to `threads` workers; the first exception wins.
template <class F>
void parallel_for(std::size_t n, std::size_t threads, F&& f) {
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) f(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

enum class Cover { Empty, Member, Undecided };

Cover certify_empty(const SemiAlgebraicSet& d, const Box& b, std::size_t depth, std::size_t budget,
                    std::optional<Point>& member) {
  BoxStatus st = certify_set_status(d, b, budget);
  if (st.status == Containment::FullyOut) return Cover::Empty;
  if (st.member) {
    member = st.member;
    return Cover::Member;
  }
  if (depth == 0) return Cover::Undecided;
  auto [l, r] = b.bisect();
  Cover cl = certify_empty(d, l, depth - 1, budget, member);
  if (cl == Cover::Member) return cl;
  Cover cr = certify_empty(d, r, depth - 1, budget, member);
  if (cr == Cover::Member) return cr;
  return cl == Cover::Empty && cr == Cover::Empty ? Cover::Empty : Cover::Undecided;
}

}  // namespace

EqualityVerdict sets_equal(const MembershipOracle& x, const MembershipOracle& y, const Box& region,
                           const EqualityOptions& options) {
  return sets_equal(x, y, std::vector<Box>{region}, options);
}

EqualityVerdict sets_equal(const MembershipOracle& x, const MembershipOracle& y, const std::vector<Box>& regions,
                           const EqualityOptions& options) {
  require_dim(y.arity(), x.arity(), "sets_equal");
  if (regions.empty()) throw Error("sets_equal: no region");
  for (const Box& r : regions) require_dim(r.dim(), x.arity(), "sets_equal region");
  std::vector<Point> points;
  std::set<Point> seen;
  for (const auto* hints : {&x.hints, &y.hints})
    for (const Point& h : *hints)
      if (seen.insert(h).second) points.push_back(h);
  Rng rng(options.seed);
  for (std::size_t r = 0; r < regions.size(); ++r) {
    std::size_t share = options.samples / regions.size() + (r < options.samples % regions.size() ? 1 : 0);
    for (std::size_t i = 0; i < share; ++i) points.push_back(rng.in_box(regions[r], options.bits));
  }
  const Box& region = regions.front();

  std::vector<std::pair<Answer, Answer>> answers(points.size());
  parallel_for(points.size(), options.threads, [&](std::size_t i) { answers[i] = {x(points[i]), y(points[i])}; });

  EqualityVerdict v;
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto [a, b] = answers[i];
    ++v.samples;
    if (a == Answer::Unknown || b == Answer::Unknown) {
      ++v.unknown;
    } else if (a != b) {
      v.verdict = Verdict::Differ;
      v.witness = points[i];
      return v;
    }
  }
  v.verdict = v.unknown_rate() <= options.unknown_ceiling ? Verdict::Equal : Verdict::Unknown;
  if (v.verdict == Verdict::Equal && x.closed_form && y.closed_form) {
    try {
      SemiAlgebraicSet d =
          sa_union(sa_difference(*x.closed_form, *y.closed_form), sa_difference(*y.closed_form, *x.closed_form));
      std::optional<Point> member;
      Cover c = certify_empty(d, region, options.cover_depth, options.cert_budget, member);
      if (c == Cover::Empty) v.certified = true;
      if (c == Cover::Member) {
        v.verdict = Verdict::Differ;
        v.witness = member;
      }
    } catch (const BudgetExhausted&) {
    }
  }
  return v;
}

namespace {

struct Grid {
  Box region;
  Rational res;
  std::vector<std::size_t> dims;

  Grid(const Box& r, const Rational& resolution) : region(r), res(resolution) {
    if (sgn(res) <= 0) throw Error("grid: resolution must be positive");
    for (std::size_t i = 0; i < r.dim(); ++i) {
      Rational q = r.width(i) / res;
      if (q.get_den() != 1) throw Error("grid: resolution does not divide the region width on axis " + std::to_string(i + 1));
      dims.push_back(q.get_num().get_ui());
    }
  }

  std::size_t index(const std::vector<std::size_t>& c) const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) k = k * dims[i] + c[i];
    return k;
  }
  std::vector<std::size_t> coords(std::size_t k) const {
    std::vector<std::size_t> c(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
      c[i] = k % dims[i];
      k /= dims[i];
    }
    return c;
  }
  Box cells(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) const {
    std::vector<Rational> lo, hi;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      lo.push_back(region.lo(i) + res * Rational(a[i]));
      hi.push_back(region.lo(i) + res * Rational(b[i]));
    }
    return Box(lo, hi);
  }
  std::optional<std::size_t> cell_of(PointView p) const {
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (p[i] < region.lo(i) || p[i] >= region.hi(i)) return std::nullopt;
      Rational t = (p[i] - region.lo(i)) / res;
      mpz_class f;
      mpz_fdiv_q(f.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
      c.push_back(f.get_ui());
    }
    return index(c);
  }
};

void scan(const SemiAlgebraicSet& x, const Grid& g, std::vector<std::size_t> a, std::vector<std::size_t> b,
          std::size_t budget, std::set<std::size_t>& occupied) {
  if (certify_set_status(x, g.cells(a, b), budget).status == Containment::FullyOut) return;
  std::size_t axis = 0;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (b[i] - a[i] > b[axis] - a[axis]) axis = i;
  if (b[axis] - a[axis] == 1) {
    occupied.insert(g.index(a));
    return;
  }
  std::size_t mid = a[axis] + (b[axis] - a[axis]) / 2;
  std::vector<std::size_t> b1 = b, a2 = a;
  b1[axis] = mid;
  a2[axis] = mid;
  scan(x, g, a, b1, budget, occupied);
  scan(x, g, a2, b, budget, occupied);
}

GridComponents assemble(const Grid& g, const std::set<std::size_t>& occupied, const std::vector<Point>& seeds) {
  std::vector<std::size_t> cells(occupied.begin(), occupied.end());
  std::vector<std::size_t> parent(cells.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  auto position = [&](std::size_t cell) -> std::optional<std::size_t> {
    auto it = std::lower_bound(cells.begin(), cells.end(), cell);
    if (it == cells.end() || *it != cell) return std::nullopt;
    return static_cast<std::size_t>(it - cells.begin());
  };
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::vector<std::size_t> c = g.coords(cells[i]);
    for (std::size_t axis = 0; axis < c.size(); ++axis) {
      if (c[axis] + 1 == g.dims[axis]) continue;
      ++c[axis];
      if (auto j = position(g.index(c))) {
        std::size_t ri = find(i), rj = find(*j);
        parent[std::max(ri, rj)] = std::min(ri, rj);
      }
      --c[axis];
    }
  }
  GridComponents out{g.res, g.region, g.dims, 0, {}, {}};
  std::map<std::size_t, std::size_t> ids;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto [it, fresh] = ids.emplace(find(i), ids.size());
    out.cell_component[cells[i]] = it->second;
  }
  out.components = ids.size();
  for (const Point& s : seeds) {
    std::optional<std::size_t> comp;
    if (auto cell = g.cell_of(s))
      if (auto it = out.cell_component.find(*cell); it != out.cell_component.end()) comp = it->second;
    out.seed_components.push_back(comp);
  }
  return out;
}

}  // namespace

std::optional<std::size_t> GridComponents::cell_of(PointView p) const { return Grid(region, resolution).cell_of(p); }

GridComponents grid_connectivity(const SemiAlgebraicSet& x, const Box& region, const Rational& resolution,
                                 const std::vector<Point>& seeds, const GridOptions& options) {
  require_dim(region.dim(), x.num_vars(), "grid_connectivity");
  Grid g(region, resolution);
  std::set<std::size_t> occupied;
  scan(x, g, std::vector<std::size_t>(g.dims.size(), 0), g.dims, options.cert_budget, occupied);
  for (const Point& p : x.distinguished_points())
    if (auto c = g.cell_of(p)) occupied.insert(*c);
  return assemble(g, occupied, seeds);
}

GridComponents grid_connectivity(const MembershipOracle& x, const Box& region, const Rational& resolution,
                                 const std::vector<Point>& seeds, const GridOptions& options) {
  require_dim(region.dim(), x.arity(), "grid_connectivity");
  Grid g(region, resolution);
  std::optional<Box> hull;
  if (x.bounds.size() == x.arity() && std::all_of(x.bounds.begin(), x.bounds.end(), [](auto& b) { return b.has_value(); })) {
    std::vector<Rational> lo, hi;
    for (const auto& b : x.bounds) {
      lo.push_back(b->lo);
      hi.push_back(b->hi > b->lo ? b->hi : b->lo + 1);
    }
    hull = Box(lo, hi);
  }
  std::set<std::size_t> occupied;
  for (const Point& h : x.hints)
    if (auto c = g.cell_of(h); c && x(h) == Answer::In) occupied.insert(*c);
  Rng rng(options.seed);
  std::size_t total = 1;
  for (std::size_t d : g.dims) total *= d;
  for (std::size_t k = 0; k < total; ++k) {
    if (occupied.count(k)) continue;
    std::vector<std::size_t> a = g.coords(k), b = a;
    for (auto& v : b) ++v;
    Box cell = g.cells(a, b);
    if (hull && !hull->intersect(cell)) continue;
    for (std::size_t s = 0; s < options.samples_per_cell; ++s)
      if (x(rng.in_box(cell, 16)) == Answer::In) {
        occupied.insert(k);
        break;
      }
  }
  return assemble(g, occupied, seeds);
}

namespace {

// Double evaluation of a polynomial and its gradient.
struct Numeric {
  struct Term {
    double c;
    std::vector<unsigned> e;
  };
  std::vector<Term> f;
  std::vector<std::vector<Term>> grad;

  static std::vector<Term> terms(const Polynomial& p) {
    std::vector<Term> out;
    for (const auto& [e, c] : p.terms()) out.push_back({c.get_d(), e});
    return out;
  }
  explicit Numeric(const Polynomial& p) : f(terms(p)) {
    for (std::size_t i = 0; i < p.num_vars(); ++i) grad.push_back(terms(p.derivative(i)));
  }
  static double eval(const std::vector<Term>& ts, const std::vector<double>& x) {
    double s = 0;
    for (const auto& t : ts) {
      double m = t.c;
      for (std::size_t i = 0; i < x.size(); ++i)
        for (unsigned k = 0; k < t.e[i]; ++k) m *= x[i];
      s += m;
    }
    return s;
  }
};

struct Frame {
  std::vector<double> t;
  double s;
  std::vector<double> at(const std::vector<double>& q) const {
    std::vector<double> x(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) x[i] = t[i] + s * q[i];
    return x;
  }
};

double norm(const std::vector<double>& v) {
  double s = 0;
  for (double a : v) s += a * a;
  return std::sqrt(s);
}

void to_unit(std::vector<double>& v) {
  double n = norm(v);
  for (double& a : v) a /= n;
}

// Unit directions: a Fibonacci lattice in R^3, Halton-driven Gaussians otherwise.
std::vector<double> direction(std::size_t i, std::size_t count, std::size_t n) {
  std::vector<double> d(n);
  if (n == 3) {
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = golden * static_cast<double>(i);
    d = {r * std::cos(phi), r * std::sin(phi), z};
    return d;
  }
  static const unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  for (std::size_t k = 0; k < n; ++k) {
    double u1 = radical_inverse(i + 1, primes[(2 * k) % 10]).get_d();
    double u2 = radical_inverse(i + 1, primes[(2 * k + 1) % 10]).get_d();
    d[k] = std::sqrt(-2.0 * std::log(std::max(u1, 1e-300))) * std::cos(2 * M_PI * u2);
  }
  to_unit(d);
  return d;
}

// Local minimum of sign * f over the sphere or ball, by projected descent.
double polish(const Numeric& nf, const Frame& fr, std::vector<double> q, double sign, bool sphere) {
  auto value = [&](const std::vector<double>& u) { return sign * Numeric::eval(nf.f, fr.at(u)); };
  double v = value(q), step = 0.1;
  for (int iter = 0; iter < 2000 && step > 1e-16; ++iter) {
    std::vector<double> x = fr.at(q), g(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) g[i] = sign * fr.s * Numeric::eval(nf.grad[i], x);
    if (sphere) {
      double dot = 0;
      for (std::size_t i = 0; i < q.size(); ++i) dot += g[i] * q[i];
      for (std::size_t i = 0; i < q.size(); ++i) g[i] -= dot * q[i];
    }
    if (norm(g) < 1e-14) break;
    std::vector<double> next(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) next[i] = q[i] - step * g[i];
    if (sphere || norm(next) > 1) to_unit(next);
    double nv = value(next);
    if (nv < v) {
      q = std::move(next);
      v = nv;
      step *= 1.5;
    } else {
      step *= 0.5;
    }
  }
  return sign * v;
}

}  // namespace

ExtremeReport check_extreme(const Polynomial& f, const AffineMap& tau, const ExtremeOptions& options) {
  std::size_t n = tau.dim();
  require_dim(f.num_vars(), n, "check_extreme");
  if (!certify_regular(f, tau.ball_bounding_box(Rational(9, 8)), options.cert_budget).regular)
    throw Error("check_extreme: f is not certified regular on a box containing the closed ball");
  Numeric nf(f);
  Frame fr{{}, tau.scale().get_d()};
  for (const Rational& t : tau.translation()) fr.t.push_back(t.get_d());

  std::size_t count = std::max<std::size_t>(options.samples, 2);
  std::vector<double> sphere_values(count);
  std::vector<std::size_t> lo_s{0}, hi_s{0}, lo_b{0}, hi_b{0};
  std::vector<double> ball_values(count);
  std::vector<std::vector<double>> sphere_q(count), ball_q(count);
  for (std::size_t i = 0; i < count; ++i) {
    sphere_q[i] = direction(i, count, n);
    sphere_values[i] = Numeric::eval(nf.f, fr.at(sphere_q[i]));
    // Ball points: a permuted lattice direction and radius u^(1/n).
    std::vector<double> q = direction((i * 7919) % count, count, n);
    double r = std::pow(radical_inverse(i + 1, 3).get_d(), 1.0 / static_cast<double>(n));
    for (double& a : q) a *= r;
    ball_q[i] = q;
    ball_values[i] = Numeric::eval(nf.f, fr.at(q));
  }
  // Polishes from the best few samples of each kind.
  auto best = [&](const std::vector<double>& vals, const std::vector<std::vector<double>>& qs, double sign,
                  bool sphere) {
    std::vector<std::size_t> order(vals.size());
    std::iota(order.begin(), order.end(), 0);
    std::size_t keep = std::min<std::size_t>(4, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                      [&](std::size_t a, std::size_t b) { return sign * vals[a] < sign * vals[b]; });
    double r = vals[order[0]];
    for (std::size_t k = 0; k < keep; ++k) {
      double v = polish(nf, fr, qs[order[k]], sign, sphere);
      if (sign * v < sign * r) r = v;
    }
    return r;
  };
  ExtremeReport rep;
  rep.min_sphere = best(sphere_values, sphere_q, 1, true);
  rep.max_sphere = best(sphere_values, sphere_q, -1, true);
  rep.min_ball = best(ball_values, ball_q, 1, false);
  rep.max_ball = best(ball_values, ball_q, -1, false);
  auto close = [&](double a, double b) { return std::abs(a - b) <= options.tolerance * std::max(1.0, std::abs(b)); };
  rep.extrema_ok = close(rep.min_ball, rep.min_sphere) && close(rep.max_ball, rep.max_sphere);

  std::sort(sphere_values.begin(), sphere_values.end());
  double span = rep.max_sphere - rep.min_sphere;
  if (span > 1e-12) {
    double gap = std::max(sphere_values.front() - rep.min_sphere, rep.max_sphere - sphere_values.back());
    for (std::size_t i = 1; i < sphere_values.size(); ++i) gap = std::max(gap, sphere_values[i] - sphere_values[i - 1]);
    rep.coverage_gap = gap / span;
  }
  rep.image_interval_ok = rep.coverage_gap < options.gap_tolerance;
  return rep;
}

namespace {

Box cell_box() { return Box::cube(3, -1, 1); }

SemiAlgebraicSet cell_constant(Rng& rng) {
  auto var = [](std::size_t i) { return Polynomial::variable(3, i); };
  Polynomial p(3);
  switch (rng.below(4)) {
    case 0: {  // half-space through the box
      p = Polynomial::constant(3, Rational(rng.integer(-4, 4), 4));
      for (std::size_t i = 0; i < 3; ++i) p += var(i) * Rational(rng.integer(-2, 2));
      break;
    }
    case 1: {  // quadric
      p = Polynomial::constant(3, Rational(rng.integer(-4, 4), 4));
      for (std::size_t i = 0; i < 3; ++i)
        p += var(i) * Rational(rng.integer(-2, 2)) + var(i).pow(2) * Rational(rng.integer(-1, 1));
      break;
    }
    case 2: {  // half-space containing the box
      Rational reach = 0;
      for (std::size_t i = 0; i < 3; ++i) {
        Rational a(rng.integer(-2, 2));
        p += var(i) * a;
        reach += abs(a);
      }
      p += Polynomial::constant(3, reach + Rational(1, 2));
      break;
    }
    default: {  // ball of radius 2 about a point near the origin
      p = Polynomial::constant(3, 4);
      for (std::size_t i = 0; i < 3; ++i)
        p -= (var(i) - Polynomial::constant(3, Rational(rng.integer(-1, 1), 8))).pow(2);
      break;
    }
  }
  return SemiAlgebraicSet::from_basic(BasicSet(3, {}, {p}));
}

Expr operand(FormKind k, const std::string& name, const SemiAlgebraicSet& g) {
  NormalForm f{k, g};
  if (k == FormKind::InputOnly) f.gamma = SemiAlgebraicSet::empty(3);
  return f.to_expr(name);
}

struct Bits {
  bool s, g1, g2, gamma;
};

bool eval_bits(const Expr& e, const Bits& b) {
  switch (e->kind) {
    case NodeKind::Input: return b.s;
    case NodeKind::Constant: return e->name == "G1" ? b.g1 : e->name == "G2" ? b.g2 : b.gamma;
    case NodeKind::Union: return eval_bits(e->left, b) || eval_bits(e->right, b);
    case NodeKind::Intersection: return eval_bits(e->left, b) && eval_bits(e->right, b);
    case NodeKind::Difference: return eval_bits(e->left, b) && !eval_bits(e->right, b);
    default: throw Error("check_table_cell: unexpected node");
  }
}

}  // namespace

CellCheck check_table_cell(NodeKind op, FormKind left, FormKind right, std::uint64_t seed,
                           const CellCheckOptions& options) {
  if (op != NodeKind::Union && op != NodeKind::Difference) throw Error("check_table_cell: op must be | or \\");
  CellCheck out;
  out.op = op;
  out.left = left;
  out.right = right;
  Rng rng(seed);
  SemiAlgebraicSet g1, g2;
  NormalizeResult norm;
  for (std::size_t attempt = 0; attempt < options.attempts && !out.realized; ++attempt) {
    g1 = cell_constant(rng);
    g2 = cell_constant(rng);
    out.expr = make_binary(op, operand(left, "G1", g1), operand(right, "G2", g2));
    try {
      norm = normalize_cpfree(out.expr, cell_box(), options.normalize);
    } catch (const BudgetExhausted&) {
      continue;
    }
    const CellRecord& top = norm.trace.back();
    out.realized = top.left == left && top.right == right;
  }
  if (!out.realized) return out;
  out.form = norm.form;
  out.v = norm.v;
  out.governing = norm.trace.back().governing;
  Expr nf = norm.form.to_expr("Gamma");
  const SemiAlgebraicSet& gamma = norm.form.gamma;
  auto bits = [&](PointView p, bool in_s) {
    return Bits{in_s, sa_member(g1, p), sa_member(g2, p), sa_member(gamma, p)};
  };

  // Shared evaluation points: half inside V, half in (-2,2)^3.
  std::vector<Point> pool;
  std::map<Point, std::size_t> where;
  for (std::size_t i = 0; i < options.points; ++i) {
    Point p = i % 2 ? rng.in_box(Box::cube(3, -2, 2), 16) : rng.in_box(out.v, 16);
    where.emplace(p, pool.size());
    pool.push_back(std::move(p));
  }
  std::vector<std::size_t> bad_prefix(pool.size() + 1, 0);
  std::vector<Bits> pool_bits;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    Bits b = bits(pool[i], false);
    pool_bits.push_back(b);
    bool bad = eval_bits(out.expr, b) != eval_bits(nf, b);
    if (bad && !out.mismatch) out.mismatch = pool[i];
    bad_prefix[i + 1] = bad_prefix[i] + (bad ? 1 : 0);
  }

  for (std::size_t k = 0; k < options.inputs; ++k) {
    std::size_t size = 1 + rng.below(options.max_input_size);
    std::vector<Point> s;
    for (std::size_t i = 0; i < size; ++i) s.push_back(rng.in_box(out.v, 16));
    std::size_t shared = options.points > s.size() ? options.points - s.size() : 0;
    std::size_t bad = bad_prefix[shared];
    for (const Point& p : s) {
      // The point is in S; a shared copy of it is re-evaluated as a member too.
      Bits b = bits(p, true);
      bool wrong = eval_bits(out.expr, b) != eval_bits(nf, b);
      if (auto it = where.find(p); it != where.end() && it->second < shared) {
        const Bits& pb = pool_bits[it->second];
        bool was_bad = eval_bits(out.expr, pb) != eval_bits(nf, pb);
        bad -= was_bad ? 1 : 0;
        bad += wrong ? 1 : 0;
      }
      if (wrong && !out.mismatch) out.mismatch = p;
      bad += wrong ? 1 : 0;
    }
    out.mismatches += bad;
    out.points_checked += shared + s.size();
    ++out.inputs_checked;
  }
  return out;
}

}  // namespace saw
