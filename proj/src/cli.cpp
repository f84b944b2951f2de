#include "saw/cli.hpp"

#include "saw/sampling.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace saw::cli {

using json = nlohmann::ordered_json;

namespace {

std::string_view trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string_view strip_comment(std::string_view s) { return s.substr(0, s.find('#')); }

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  while (!text.empty()) {
    std::size_t nl = text.find('\n');
    out.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

// Rethrows a library error as the same kind, prefixed with a position.
[[noreturn]] void rethrow_at(std::size_t line, const Error& e) {
  std::string msg = "line " + std::to_string(line) + ": " + e.what();
  if (dynamic_cast<const ArityError*>(&e)) throw ArityError(msg);
  if (dynamic_cast<const DimensionMismatch*>(&e)) throw DimensionMismatch(msg);
  throw ParseError(msg);
}

std::size_t parse_count(const std::string& w, std::size_t line) {
  if (w.empty() || !std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError("line " + std::to_string(line) + ": expected a count, got '" + w + "'");
  return std::stoul(w);
}

std::vector<Rational> parse_rationals(const std::vector<std::string>& ws, std::size_t from, std::size_t line) {
  std::vector<Rational> out;
  for (std::size_t i = from; i < ws.size(); ++i) {
    try {
      out.push_back(parse_rational(ws[i]));
    } catch (const Error& e) {
      rethrow_at(line, e);
    }
  }
  return out;
}

}  // namespace

std::vector<NamedSet> parse_set_file(std::string_view text) {
  struct Pending {
    std::string name;
    std::size_t dim = 0;
    std::optional<Box> bound;
    std::vector<Point> points;
    std::vector<BasicSet> disjuncts;
  };
  std::vector<NamedSet> out;
  std::optional<Pending> cur;
  auto flush = [&] {
    if (!cur) return;
    out.push_back({cur->name, SemiAlgebraicSet(cur->dim, std::move(cur->disjuncts), cur->bound, std::move(cur->points))});
    cur.reset();
  };
  auto lines = lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::size_t ln = i + 1;
    auto fail = [&](const std::string& msg) { throw ParseError("line " + std::to_string(ln) + ": " + msg); };
    std::string_view line = trim(strip_comment(lines[i]));
    if (line.empty()) continue;
    std::vector<std::string> ws = words(line);
    const std::string& kw = ws[0];
    if (kw == "set") {
      if (ws.size() != 4 || ws[2] != "dim") fail("expected 'set NAME dim N'");
      flush();
      for (const NamedSet& s : out)
        if (s.name == ws[1]) fail("duplicate set name '" + ws[1] + "'");
      cur = Pending{ws[1], parse_count(ws[3], ln), std::nullopt, {}, {}};
      if (cur->dim == 0) fail("dimension must be positive");
      continue;
    }
    if (!cur) fail("'" + kw + "' before any 'set' line");
    std::size_t n = cur->dim;
    if (kw == "bound") {
      std::vector<Rational> v = parse_rationals(ws, 1, ln);
      if (v.size() != 2 * n) fail("bound needs " + std::to_string(2 * n) + " numbers");
      std::vector<Rational> lo, hi;
      for (std::size_t k = 0; k < n; ++k) {
        if (v[2 * k] >= v[2 * k + 1]) fail("bound side " + std::to_string(k + 1) + " is empty");
        lo.push_back(v[2 * k]);
        hi.push_back(v[2 * k + 1]);
      }
      cur->bound = Box(lo, hi);
    } else if (kw == "point") {
      Point p = parse_rationals(ws, 1, ln);
      if (p.size() != n) fail("point needs " + std::to_string(n) + " coordinates");
      cur->points.push_back(std::move(p));
    } else if (kw == "basic:") {
      if (ws.size() != 1) fail("unexpected text after 'basic:'");
      cur->disjuncts.emplace_back(n);
    } else if (kw == "eq" || kw == "gt") {
      if (cur->disjuncts.empty()) fail("'" + kw + "' outside a 'basic:' block");
      std::string_view body = trim(line.substr(2));
      if (body.empty()) fail("missing polynomial");
      Polynomial p;
      try {
        p = parse_polynomial(body, n);
      } catch (const Error& e) {
        rethrow_at(ln, e);
      }
      auto& b = cur->disjuncts.back();
      (kw == "eq" ? b.equations : b.strict_positives).push_back(std::move(p));
    } else {
      fail("unknown keyword '" + kw + "'");
    }
  }
  flush();
  return out;
}

std::string write_set_file(const std::vector<NamedSet>& sets) {
  std::ostringstream o;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const SemiAlgebraicSet& x = sets[i].set;
    std::size_t n = x.num_vars();
    if (i) o << '\n';
    o << "set " << sets[i].name << " dim " << n << '\n';
    if (const auto& b = x.declared_bound()) {
      o << "bound";
      for (std::size_t k = 0; k < n; ++k) o << ' ' << to_string(b->lo(k)) << ' ' << to_string(b->hi(k));
      o << '\n';
    }
    for (const Point& p : x.distinguished_points()) {
      o << "point";
      for (const Rational& c : p) o << ' ' << to_string(c);
      o << '\n';
    }
    for (const BasicSet& b : x.disjuncts()) {
      o << "basic:\n";
      for (const Polynomial& p : b.equations) o << "  eq " << p.to_string() << '\n';
      for (const Polynomial& p : b.strict_positives) o << "  gt " << p.to_string() << '\n';
    }
  }
  return o.str();
}

std::vector<Expr> parse_expression_file(std::string_view text, const Environment& env, std::size_t n) {
  std::vector<Expr> out;
  auto lines = lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = trim(strip_comment(lines[i]));
    if (line.empty()) continue;
    try {
      out.push_back(parse_rae(line, env, n));
    } catch (const Error& e) {
      rethrow_at(i + 1, e);
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

namespace {

json rat(const Rational& q) { return to_string(q); }

json point_json(PointView p) {
  json a = json::array();
  for (const Rational& c : p) a.push_back(rat(c));
  return a;
}

json box_json(const Box& b) {
  json lo = json::array(), hi = json::array();
  for (std::size_t i = 0; i < b.dim(); ++i) {
    lo.push_back(rat(b.lo(i)));
    hi.push_back(rat(b.hi(i)));
  }
  return {{"lo", lo}, {"hi", hi}};
}

json tau_json(const AffineMap& t) { return {{"scale", rat(t.scale())}, {"translation", point_json(t.translation())}}; }

json config_json(const RunConfig& c) {
  json centers = json::array();
  for (const Point& p : c.centers) centers.push_back(point_json(p));
  return {{"command", c.command},
          {"input", c.input},
          {"sets", c.sets},
          {"expressions", c.expressions},
          {"names", c.names},
          {"dim", c.n},
          {"seed", c.seed},
          {"cert_budget", c.cert_budget},
          {"sample_budget", c.sample_budget},
          {"resolution", c.resolution ? json(rat(*c.resolution)) : json(nullptr)},
          {"margin", rat(c.margin)},
          {"region", {rat(c.region_lo), rat(c.region_hi)}},
          {"first_exponent", c.first_exponent},
          {"last_exponent", c.last_exponent},
          {"centers", centers},
          {"threads", c.threads}};
}

json equality_json(const EqualityVerdict& v) {
  json j{{"verdict", to_string(v.verdict)},
         {"certified", v.certified},
         {"samples", v.samples},
         {"unknown", v.unknown}};
  j["witness"] = v.witness ? point_json(*v.witness) : json(nullptr);
  return j;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

// Tallies what a run consumed, and the worst outcome seen.
struct Tally {
  std::size_t samples = 0;
  std::size_t unknown = 0;
  std::size_t cert_boxes = 0;
  bool failure = false;
  bool undecided = false;

  void add(const EqualityVerdict& v) {
    samples += v.samples;
    unknown += v.unknown;
    note(v.verdict);
  }
  void note(Verdict v) {
    if (v == Verdict::Differ) failure = true;
    if (v == Verdict::Unknown) undecided = true;
  }
  int exit_code() const { return failure ? kFailure : undecided ? kUnknown : kSuccess; }
};

struct Context {
  const RunConfig& config;
  std::ostringstream text;
  json results = json::array();
  Tally tally;
  json extra = json::object();
  std::string sets_file;
};

Box region_cube(const RunConfig& c, std::size_t n) { return Box::cube(n, c.region_lo, c.region_hi); }

Environment load_environment(const RunConfig& c) {
  Environment env;
  if (c.sets.empty()) return env;
  for (NamedSet& s : parse_set_file(read_file(c.sets))) env.emplace(s.name, std::move(s.set));
  return env;
}

EqualityOptions equality_options(const RunConfig& c) {
  EqualityOptions o;
  o.samples = c.sample_budget;
  o.seed = c.seed;
  o.cert_budget = c.cert_budget;
  o.threads = c.threads;
  return o;
}

WitnessOptions witness_options(const RunConfig& c, std::size_t n) {
  WitnessOptions o;
  o.initial = region_cube(c, n);
  o.margin = c.margin;
  o.normalize.find.cert_budget = c.cert_budget;
  o.equality = equality_options(c);
  return o;
}

// The box grown outward about its center to a whole number of cells per axis.
Box snap(const Box& b, const Rational& r) {
  std::vector<Rational> lo, hi;
  Point c = b.center();
  for (std::size_t i = 0; i < b.dim(); ++i) {
    Rational half = b.width(i) / 2 / r;
    mpz_class m;
    mpz_cdiv_q(m.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
    lo.push_back(c[i] - Rational(m) * r);
    hi.push_back(c[i] + Rational(m) * r);
  }
  return Box(lo, hi);
}

// Cube spanning every coordinate of the given boxes, in `arity` dimensions.
Box focus_cube(const std::vector<Box>& boxes, std::size_t arity) {
  Rational lo = boxes.front().lo(0), hi = boxes.front().hi(0);
  for (const Box& b : boxes)
    for (std::size_t i = 0; i < b.dim(); ++i) {
      lo = std::min(lo, b.lo(i));
      hi = std::max(hi, b.hi(i));
    }
  return Box::cube(arity, lo, hi);
}

struct Connectivity {
  Rational resolution;
  Box region;
  std::size_t components = 0;
  std::size_t occupied = 0;
  std::vector<std::optional<std::size_t>> seeds;
};

Connectivity connectivity(const SemiAlgebraicSet& x, const Rational& res, const RunConfig& c) {
  Box base = x.declared_bound() ? *x.declared_bound() : region_cube(c, x.num_vars());
  Box region = snap(base, res);
  GridOptions o;
  o.seed = c.seed;
  GridComponents g = grid_connectivity(x, region, res, x.distinguished_points(), o);
  return {res, region, g.components, g.cell_component.size(), g.seed_components};
}

json connectivity_json(const Connectivity& k) {
  json seeds = json::array();
  for (const auto& s : k.seeds) seeds.push_back(s ? json(*s) : json(nullptr));
  return {{"resolution", rat(k.resolution)},
          {"region", box_json(k.region)},
          {"grid_cert_budget", GridOptions{}.cert_budget},
          {"components", k.components},
          {"occupied_cells", k.occupied},
          {"seed_components", seeds}};
}

std::string plural(std::size_t k, const char* word) {
  return std::to_string(k) + " " + word + (k == 1 ? "" : "s");
}

void cmd_classify(Context& ctx) {
  const RunConfig& c = ctx.config;
  std::vector<Expr> exprs = parse_expression_file(read_file(c.input), load_environment(c), c.n);
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    Classification k = classify(exprs[i]);
    ctx.results.push_back({{"id", i + 1},
                           {"expression", to_string(exprs[i])},
                           {"arity", exprs[i]->arity},
                           {"cartesian_product_free", k.cartesian_product_free},
                           {"projection_free", k.projection_free},
                           {"positive_one_pass", k.positive_one_pass},
                           {"s_occurrences", k.s_occurrences}});
    ctx.text << "expression " << i + 1 << ": " << to_string(exprs[i]) << '\n'
             << "  arity: " << exprs[i]->arity << '\n'
             << "  cartesian-product-free: " << yes(k.cartesian_product_free) << '\n'
             << "  projection-free: " << yes(k.projection_free) << '\n'
             << "  positive one-pass: " << yes(k.positive_one_pass) << '\n'
             << "  occurrences of S: " << k.s_occurrences << '\n';
  }
}

json trace_json(const std::vector<CellRecord>& trace) {
  json a = json::array();
  for (const CellRecord& r : trace) {
    json j{{"path", r.path},
           {"op", op_symbol(r.op)},
           {"left", to_string(r.left)},
           {"right", to_string(r.right)},
           {"result", to_string(r.result)}};
    j["governing"] = r.governing ? json(to_string(*r.governing)) : json(nullptr);
    a.push_back(j);
  }
  return a;
}

void cmd_normalize(Context& ctx) {
  const RunConfig& c = ctx.config;
  std::vector<Expr> exprs = parse_expression_file(read_file(c.input), load_environment(c), c.n);
  NormalizeOptions nopt;
  nopt.find.cert_budget = c.cert_budget;
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    const Expr& e = exprs[i];
    Classification k = classify(e);
    json entry{{"id", i + 1}, {"expression", to_string(e)}};
    ctx.text << "expression " << i + 1 << ": " << to_string(e) << '\n';
    bool any = false;
    if (k.cartesian_product_free) {
      json cp{{"initial", box_json(region_cube(c, c.n))}};
      try {
        Box u = region_cube(c, c.n);
        std::vector<Expr> bodies;
        if (k.projection_free && e->arity == c.n) {
          bodies.push_back(e);
        } else {
          for (const Component& comp : extract_components(eliminate_intersection(e), c.n).components)
            if (!comp.input_free) bodies.push_back(comp.body);
        }
        json comps = json::array();
        for (const Expr& body : bodies) {
          NormalizeResult r = normalize_cpfree(body, u, nopt);
          u = r.v;
          ctx.tally.cert_boxes += r.cert_boxes;
          comps.push_back({{"body", to_string(body)},
                           {"form", to_string(r.form.kind)},
                           {"normal_form", to_string(r.form)},
                           {"v", box_json(r.v)},
                           {"cert_boxes", r.cert_boxes},
                           {"trace", trace_json(r.trace)}});
          ctx.text << "  component " << to_string(body) << '\n'
                   << "    normal form: " << to_string(r.form) << '\n'
                   << "    valid on: " << to_string(r.v) << '\n';
        }
        cp["components"] = comps;
        cp["v"] = box_json(u);
        any = true;
      } catch (const BudgetExhausted& ex) {
        cp["error"] = ex.what();
        ctx.tally.undecided = true;
        ctx.text << "  product-free normal form undecided: " << ex.what() << '\n';
      } catch (const ArityError& ex) {
        cp["error"] = ex.what();
        ctx.text << "  no product-free normal form: " << ex.what() << '\n';
      }
      entry["cartesian_product_free"] = cp;
    }
    if (k.positive_one_pass) {
      OnePassNF nf = normalize_onepass(e, c.n);
      entry["positive_one_pass"] = {{"normal_form", to_string(nf)}, {"k", nf.k}, {"indices", nf.indices}};
      ctx.text << "  one-pass normal form: " << to_string(nf) << '\n';
      any = true;
    }
    if (!any && !entry.contains("cartesian_product_free")) {
      entry["error"] = "neither cartesian-product-free nor positive one-pass";
      ctx.text << "  no normal form: neither cartesian-product-free nor positive one-pass\n";
    }
    if (!any && !ctx.tally.undecided) ctx.tally.failure = true;
    ctx.results.push_back(entry);
  }
}

void report_witness(Context& ctx, const WitnessPair& w) {
  const RunConfig& c = ctx.config;
  ctx.tally.cert_boxes += w.cert_boxes;
  ctx.text << "tau: scale " << to_string(w.tau.scale()) << ", translation " << to_string(w.tau.translation()) << '\n'
           << "V: " << to_string(w.v) << '\n';
  for (const ExpressionVerdict& v : w.verdicts) {
    json j{{"id", v.id},
           {"expression", v.expression},
           {"method", to_string(v.method)},
           {"verdict", to_string(v.verdict)},
           {"normal_forms", v.normal_forms},
           {"sampled", equality_json(v.sampled)}};
    j["witness"] = v.witness ? point_json(*v.witness) : json(nullptr);
    j["squeeze_violations"] = v.squeeze_violations ? json(*v.squeeze_violations) : json(nullptr);
    ctx.results.push_back(j);
    ctx.tally.add(v.sampled);
    ctx.tally.note(v.verdict);
    if (v.squeeze_violations && *v.squeeze_violations) ctx.tally.failure = true;
    ctx.text << "expression " << v.id << ": " << v.expression << '\n';
    for (const std::string& f : v.normal_forms) ctx.text << "  normal form: " << f << '\n';
    ctx.text << "  verdict: " << to_string(v.verdict) << " ("
             << (v.method == Method::Structural ? "structural; spot check over " : "sampled over ")
             << plural(v.sampled.samples, "point") << ", " << v.sampled.unknown << " unknown";
    if (v.squeeze_violations) ctx.text << ", " << *v.squeeze_violations << " squeeze violations";
    ctx.text << ")\n";
    if (v.witness) ctx.text << "  witness: " << to_string(*v.witness) << '\n';
  }

  Rational res = c.resolution ? *c.resolution : w.tau.scale() / 4;
  Connectivity ka = connectivity(w.a, res, c), kb = connectivity(w.b, res, c);
  bool shape_ok = ka.components == 1 && kb.components == 2;
  if (!shape_ok) ctx.tally.failure = true;
  ctx.text << "connectivity at resolution " << to_string(res) << ": A " << plural(ka.components, "component")
           << ", B " << plural(kb.components, "component") << '\n';
  if (!w.rejected.empty()) ctx.text << "rejected candidates: " << w.rejected.size() << '\n';
  if (!w.found) ctx.text << "no tau accepted within the scale schedule\n";
  std::string queries = ctx.tally.failure ? "some query Differs"
                        : ctx.tally.undecided ? "some query Unknown"
                                              : "all queries Equal";
  ctx.text << "A " << (ka.components == 1 ? "connected" : "not connected") << ", B "
           << (kb.components == 2 ? "disconnected" : "not split in two") << ", " << queries << '\n';

  json rejected = json::array();
  for (const RejectedTau& r : w.rejected)
    rejected.push_back({{"tau", tau_json(r.tau)}, {"expression", r.expression}, {"reason", equality_json(r.reason)}});
  ctx.extra = {{"found", w.found},
               {"tau", tau_json(w.tau)},
               {"v", box_json(w.v)},
               {"a", write_set_file({{"A", w.a}})},
               {"b", write_set_file({{"B", w.b}})},
               {"connectivity", {{"a", connectivity_json(ka)}, {"b", connectivity_json(kb)}}},
               {"rejected", rejected}};

  std::vector<NamedSet> sets;
  if (!c.sets.empty())
    for (NamedSet& s : parse_set_file(read_file(c.sets))) {
      if (s.name == "A" || s.name == "B") throw ParseError("constant names A and B are reserved for the witness");
      sets.push_back(std::move(s));
    }
  sets.push_back({"A", w.a});
  sets.push_back({"B", w.b});
  ctx.sets_file = write_set_file(sets);
}

void cmd_witness_cpfree(Context& ctx) {
  const RunConfig& c = ctx.config;
  std::vector<Expr> exprs = parse_expression_file(read_file(c.input), load_environment(c), c.n);
  report_witness(ctx, witness_cpfree(exprs, c.n, witness_options(c, c.n)));
}

void cmd_witness_onepass(Context& ctx) {
  const RunConfig& c = ctx.config;
  if (c.n != 3) throw ParseError("witness-onepass requires --dim 3");
  std::vector<Expr> exprs = parse_expression_file(read_file(c.input), load_environment(c), c.n);
  OnePassSearch search;
  search.centers = c.centers;
  search.first_exponent = c.first_exponent;
  search.last_exponent = c.last_exponent;
  search.candidate_samples = std::min<std::size_t>(search.candidate_samples, c.sample_budget);
  WitnessPair w = witness_onepass(exprs, search, witness_options(c, c.n));
  if (!w.found) ctx.tally.undecided = true;
  for (const RejectedTau& r : w.rejected) ctx.tally.samples += r.reason.samples;
  report_witness(ctx, w);
}

const SemiAlgebraicSet& find_set(const std::vector<NamedSet>& sets, const std::string& name) {
  for (const NamedSet& s : sets)
    if (s.name == name) return s.set;
  throw ParseError("no set named '" + name + "'");
}

void cmd_verify(Context& ctx) {
  const RunConfig& c = ctx.config;
  std::vector<NamedSet> sets = parse_set_file(read_file(c.input));
  std::string lhs, rhs;
  auto named = [&](const char* name) {
    return std::any_of(sets.begin(), sets.end(), [&](const NamedSet& s) { return s.name == name; });
  };
  if (c.names.empty() && named("A") && named("B")) {
    lhs = "A";
    rhs = "B";
  } else if (c.names.empty()) {
    if (sets.size() < 2) throw ParseError("verify needs two sets");
    lhs = sets[0].name;
    rhs = sets[1].name;
  } else {
    if (c.names.size() != 2) throw ParseError("verify takes exactly two set names");
    lhs = c.names[0];
    rhs = c.names[1];
  }
  const SemiAlgebraicSet &x = find_set(sets, lhs), &y = find_set(sets, rhs);
  if (x.num_vars() != y.num_vars()) throw DimensionMismatch("verify: sets of different dimension");
  std::vector<Box> hull;
  for (const SemiAlgebraicSet* s : {&x, &y})
    if (s->declared_bound()) hull.push_back(*s->declared_bound());
  auto regions = [&](std::size_t arity) {
    std::vector<Box> r;
    if (!hull.empty()) r.push_back(focus_cube(hull, arity));
    r.push_back(region_cube(c, arity));
    return r;
  };
  EqualityOptions eq = equality_options(c);
  ctx.extra = {{"lhs", lhs}, {"rhs", rhs}};
  if (c.expressions.empty()) {
    EqualityVerdict v = sets_equal(MembershipOracle::of_set(x, lhs), MembershipOracle::of_set(y, rhs),
                                   regions(x.num_vars()), eq);
    ctx.tally.add(v);
    ctx.results.push_back({{"id", 1}, {"expression", "S"}, {"sampled", equality_json(v)}});
    ctx.text << lhs << " vs " << rhs << ": " << to_string(v.verdict) << " (" << plural(v.samples, "point") << ", " << v.unknown
             << " unknown" << (v.certified ? ", certified" : "") << ")\n";
    if (v.witness) ctx.text << "  witness: " << to_string(*v.witness) << '\n';
    return;
  }
  Environment env;
  for (const NamedSet& s : sets) env.emplace(s.name, s.set);
  std::vector<Expr> exprs = parse_expression_file(read_file(c.expressions), env, x.num_vars());
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    EqualityOptions o = eq;
    o.seed = mix_seed(c.seed, i);
    EqualityVerdict v = sets_equal(eval_oracle(exprs[i], x), eval_oracle(exprs[i], y), regions(exprs[i]->arity), o);
    ctx.tally.add(v);
    ctx.results.push_back({{"id", i + 1}, {"expression", to_string(exprs[i])}, {"sampled", equality_json(v)}});
    ctx.text << "expression " << i + 1 << ": " << to_string(exprs[i]) << '\n'
             << "  e(" << lhs << ") vs e(" << rhs << "): " << to_string(v.verdict) << " ("
             << plural(v.samples, "point") << ", " << v.unknown << " unknown" << (v.certified ? ", certified" : "") << ")\n";
    if (v.witness) ctx.text << "  witness: " << to_string(*v.witness) << '\n';
  }
}

void cmd_connectivity(Context& ctx) {
  const RunConfig& c = ctx.config;
  std::vector<NamedSet> sets = parse_set_file(read_file(c.input));
  std::vector<NamedSet> chosen;
  if (c.names.empty()) {
    chosen = sets;
  } else {
    for (const std::string& name : c.names) chosen.push_back({name, find_set(sets, name)});
  }
  for (const NamedSet& s : chosen) {
    Rational res;
    if (c.resolution) {
      res = *c.resolution;
    } else {
      Box base = s.set.declared_bound() ? *s.set.declared_bound() : region_cube(c, s.set.num_vars());
      res = base.min_width() / 10;
    }
    Connectivity k = connectivity(s.set, res, c);
    json j{{"name", s.name}};
    j.update(connectivity_json(k));
    ctx.results.push_back(j);
    ctx.text << s.name << ": " << plural(k.components, "component") << " at resolution " << to_string(res) << " ("
             << plural(k.occupied, "occupied cell") << ")\n";
  }
}

}  // namespace

RunResult run(const RunConfig& config) {
  static const std::map<std::string, void (*)(Context&)> commands{
      {"classify", cmd_classify},         {"normalize", cmd_normalize}, {"witness-cpfree", cmd_witness_cpfree},
      {"witness-onepass", cmd_witness_onepass}, {"verify", cmd_verify},     {"connectivity", cmd_connectivity}};
  Context ctx{config, {}, json::array(), {}, json::object(), {}};
  RunResult result;
  json report{{"config", config_json(config)}};
  try {
    auto it = commands.find(config.command);
    if (it == commands.end()) throw ParseError("unknown command '" + config.command + "'");
    bool witness = config.command.rfind("witness", 0) == 0;
    if (witness && config.n != 3 && config.n != 4) throw ParseError("--dim must be 3 or 4");
    it->second(ctx);
    result.exit_code = ctx.tally.exit_code();
  } catch (const BudgetExhausted& e) {
    ctx.text << "budget exhausted: " << e.what() << '\n';
    result.exit_code = kUnknown;
  } catch (const Error& e) {
    ctx.text << "error: " << e.what() << '\n';
    result.exit_code = kInputError;
  }
  report["budgets"] = {{"cert_budget", config.cert_budget},
                       {"sample_budget", config.sample_budget},
                       {"cert_boxes_consumed", ctx.tally.cert_boxes},
                       {"samples_consumed", ctx.tally.samples},
                       {"unknown_answers", ctx.tally.unknown}};
  report["results"] = ctx.results;
  if (!ctx.extra.empty()) report["witness"] = ctx.extra;
  report["exit_code"] = result.exit_code;
  result.text = ctx.text.str();
  result.sets_file = std::move(ctx.sets_file);
  result.report = std::move(report);
  return result;
}

int run_and_write(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunResult r = run(config);
  (r.exit_code == kInputError ? err : out) << r.text;
  if (config.out.empty()) return r.exit_code;
  std::ofstream f(config.out, std::ios::binary);
  if (!f) {
    err << "error: cannot write '" << config.out << "'\n";
    return kInputError;
  }
  f << r.report.dump(2) << '\n';
  if (!r.sets_file.empty()) {
    std::filesystem::path p(config.out);
    std::ofstream s(p.replace_extension(".sets"), std::ios::binary);
    s << r.sets_file;
  }
  return r.exit_code;
}

}  // namespace saw::cli
