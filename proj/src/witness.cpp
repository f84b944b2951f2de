#include "saw/witness.hpp"

#include "saw/sampling.hpp"

#include <algorithm>

namespace saw {

std::string to_string(Method m) { return m == Method::Structural ? "structural" : "sampled"; }

bool WitnessPair::all_equal() const {
  return found && std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.verdict == Verdict::Equal; });
}

AffineMap choose_tau(const Box& v, const Rational& margin) {
  if (sgn(margin) <= 0 || margin >= 1) throw Error("choose_tau: margin must lie in (0, 1)");
  return AffineMap(margin * v.min_width() / 2, v.center());
}

namespace {

Box initial_for(const WitnessOptions& options, std::size_t n) {
  const Box& b = options.initial;
  if (b.dim() == n) return b;
  return Box::cube(n, b.lo(0), b.hi(0));
}

// Output coordinates copy input coordinates or constant coordinates, so a
// cube around every translation coordinate covers each projection of tau's ball.
std::vector<Box> sample_regions(const AffineMap& tau, const Box& initial, std::size_t arity) {
  const Point& t = tau.translation();
  Rational lo = *std::min_element(t.begin(), t.end()) - 2 * tau.scale();
  Rational hi = *std::max_element(t.begin(), t.end()) + 2 * tau.scale();
  Rational wlo = initial.lo(0), whi = initial.hi(0);
  for (std::size_t i = 1; i < initial.dim(); ++i) {
    wlo = std::min(wlo, initial.lo(i));
    whi = std::max(whi, initial.hi(i));
  }
  return {Box::cube(arity, lo, hi), Box::cube(arity, wlo, whi)};
}

}  // namespace

WitnessPair witness_cpfree(const std::vector<Expr>& exprs, std::size_t n, const WitnessOptions& options) {
  if (n != 3 && n != 4) throw Error("witness_cpfree: n must be 3 or 4");
  Box u = initial_for(options, n);
  struct Prepared {
    Expr e;
    ComponentDecomposition d;
    std::vector<std::string> forms;
  };
  std::vector<Prepared> prepared;
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    const Expr& e = exprs[i];
    std::string where = "witness_cpfree: expression " + std::to_string(i + 1) + ": ";
    if (!classify(e).cartesian_product_free) throw Error(where + "not product-free: " + to_string(e));
    if (e->arity + 1 != n) throw ArityError(where + "output arity must be " + std::to_string(n - 1));
    prepared.push_back({e, extract_components(eliminate_intersection(e), n), {}});
  }
  std::size_t cert_boxes = 0;
  // One box threads through every component in order.
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    auto& p = prepared[i];
    for (std::size_t j = 0; j < p.d.components.size(); ++j) {
      const Component& c = p.d.components[j];
      if (c.input_free) {
        p.forms.push_back("input-free");
        continue;
      }
      try {
        NormalizeResult r = normalize_cpfree(c.body, u, options.normalize);
        u = r.v;
        cert_boxes += r.cert_boxes;
        p.forms.push_back(to_string(r.form));
      } catch (const BudgetExhausted& ex) {
        throw BudgetExhausted("expression " + std::to_string(i + 1) + ", component " + std::to_string(j + 1) + ": " +
                              ex.what());
      }
    }
  }

  WitnessPair w;
  w.v = u;
  w.cert_boxes = cert_boxes;
  w.tau = choose_tau(u, options.margin);
  w.a = sphere_of(w.tau, n);
  w.b = dotted_sphere_of(w.tau, n);
  Box wide = initial_for(options, n);
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    ExpressionVerdict v;
    v.id = i + 1;
    v.expression = to_string(prepared[i].e);
    v.method = Method::Structural;
    v.normal_forms = prepared[i].forms;
    v.verdict = Verdict::Equal;
    MembershipOracle ea = eval_oracle(prepared[i].e, w.a, options.oracle);
    MembershipOracle eb = eval_oracle(prepared[i].e, w.b, options.oracle);
    EqualityOptions eq = options.equality;
    eq.seed = mix_seed(options.equality.seed, i);
    v.sampled = sets_equal(ea, eb, sample_regions(w.tau, wide, n - 1), eq);
    if (v.sampled.verdict == Verdict::Differ) {
      v.verdict = Verdict::Differ;
      v.witness = v.sampled.witness;
    }
    w.verdicts.push_back(std::move(v));
  }
  return w;
}

std::size_t squeeze_violations(const MembershipOracle& lower, const MembershipOracle& upper,
                               const std::vector<Box>& regions, const EqualityOptions& options) {
  require_dim(upper.arity(), lower.arity(), "squeeze_violations");
  std::vector<Point> points = lower.hints;
  Rng rng(options.seed);
  for (std::size_t r = 0; r < regions.size(); ++r) {
    std::size_t share = options.samples / regions.size() + (r < options.samples % regions.size() ? 1 : 0);
    for (std::size_t i = 0; i < share; ++i) points.push_back(rng.in_box(regions[r], options.bits));
  }
  std::size_t bad = 0;
  for (const Point& p : points)
    if (lower(p) == Answer::In && upper(p) != Answer::In) ++bad;
  return bad;
}

namespace {

std::vector<Point> default_centers(const Box& b) {
  std::vector<Point> out;
  std::size_t n = b.dim(), total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  static const Rational offsets[] = {Rational(1, 2), Rational(1, 4), Rational(3, 4)};
  for (std::size_t k = 0; k < total; ++k) {
    Point p(n);
    std::size_t r = k;
    for (std::size_t i = n; i-- > 0;) {
      p[i] = b.lo(i) + b.width(i) * offsets[r % 3];
      r /= 3;
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

WitnessPair witness_onepass(const std::vector<Expr>& exprs, const OnePassSearch& search, const WitnessOptions& options) {
  const std::size_t n = 3;
  std::vector<OnePassNF> nfs;
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    if (!classify(exprs[i]).positive_one_pass)
      throw Error("witness_onepass: expression " + std::to_string(i + 1) + " is not positive one-pass: " +
                  to_string(exprs[i]));
    nfs.push_back(normalize_onepass(exprs[i], n, options.normalize.disjunct_budget));
  }
  Box wide = initial_for(options, n);
  std::vector<Point> centers = search.centers.empty() ? default_centers(wide) : search.centers;
  if (centers.empty()) throw Error("witness_onepass: no candidate centers");

  WitnessPair w;
  std::optional<AffineMap> accepted;
  AffineMap best(1, centers.front());
  std::size_t best_passed = 0;
  bool have_best = false;
  for (unsigned m = search.first_exponent; m <= search.last_exponent && !accepted; ++m) {
    Rational scale(mpz_class(1), mpz_class(1) << m);
    for (const Point& c : centers) {
      AffineMap tau(scale, c);
      SemiAlgebraicSet sphere = sphere_of(tau, n), ball = ball_of(tau, n);
      std::size_t passed = 0;
      for (std::size_t i = 0; i < nfs.size(); ++i) {
        EqualityOptions eq = options.equality;
        eq.samples = search.candidate_samples;
        eq.seed = mix_seed(options.equality.seed, i);
        EqualityVerdict ev = sets_equal(nfs[i].oracle(sphere, options.oracle), nfs[i].oracle(ball, options.oracle),
                                        sample_regions(tau, wide, exprs[i]->arity), eq);
        if (ev.verdict != Verdict::Equal) {
          w.rejected.push_back({tau, i + 1, ev});
          break;
        }
        ++passed;
      }
      if (passed == nfs.size()) {
        accepted = tau;
        break;
      }
      if (!have_best || passed > best_passed) {
        best = tau;
        best_passed = passed;
        have_best = true;
      }
    }
  }

  w.found = accepted.has_value();
  w.tau = accepted ? *accepted : best;
  w.a = sphere_of(w.tau, n);
  w.b = dotted_sphere_of(w.tau, n);
  w.v = w.tau.ball_bounding_box(Rational(9, 8));
  SemiAlgebraicSet ball = ball_of(w.tau, n);
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    ExpressionVerdict v;
    v.id = i + 1;
    v.expression = to_string(exprs[i]);
    v.method = Method::Sampled;
    v.normal_forms.push_back(to_string(nfs[i]));
    if (w.found) {
      std::vector<Box> regions = sample_regions(w.tau, wide, exprs[i]->arity);
      EqualityOptions eq = options.equality;
      eq.seed = mix_seed(options.equality.seed, 1000 + i);
      MembershipOracle ea = eval_oracle(exprs[i], w.a, options.oracle);
      MembershipOracle eb = eval_oracle(exprs[i], w.b, options.oracle);
      MembershipOracle ec = eval_oracle(exprs[i], ball, options.oracle);
      v.sampled = sets_equal(ea, eb, regions, eq);
      v.verdict = v.sampled.verdict;
      v.witness = v.sampled.witness;
      v.squeeze_violations = squeeze_violations(ea, eb, regions, eq) + squeeze_violations(eb, ec, regions, eq);
    }
    w.verdicts.push_back(std::move(v));
  }
  return w;
}

}  // namespace saw
