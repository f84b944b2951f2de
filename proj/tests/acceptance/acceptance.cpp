// Runs every acceptance criterion at its stated size and tolerance, printing
// one PASS/FAIL line each. Arguments restrict the run to the named criteria.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "saw/cli.hpp"
#include "saw/findset.hpp"
#include "saw/sampling.hpp"

namespace saw {
namespace {

namespace fs = std::filesystem;

const fs::path kCorpus = SAW_CORPUS_DIR;
constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fixed(double v, int digits = 1) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(digits) << v;
  return o.str();
}

std::vector<fs::path> lists_in(const fs::path& dir, const std::string& prefix) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".rae" && entry.path().filename().string().rfind(prefix, 0) == 0)
      out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

Environment load(const fs::path& sets) {
  Environment env;
  for (cli::NamedSet& s : cli::parse_set_file(cli::read_file(sets))) env.emplace(s.name, std::move(s.set));
  return env;
}

std::vector<Expr> load_exprs(const fs::path& file, const Environment& env, std::size_t n) {
  return cli::parse_expression_file(cli::read_file(file), env, n);
}

// Witness checks shared by both end-to-end criteria: A one component, B two,
// at resolution scale/4 over the inflated ball box, with B's center cut off.
std::string shape_problem(const WitnessPair& w) {
  Rational res = w.tau.scale() / 4;
  Box region = w.tau.ball_bounding_box(Rational(5, 4));
  GridComponents a = grid_connectivity(w.a, region, res);
  GridComponents b = grid_connectivity(w.b, region, res, {w.tau.translation()});
  if (a.components != 1) return "A has " + std::to_string(a.components) + " components";
  if (b.components != 2) return "B has " + std::to_string(b.components) + " components";
  return {};
}

Outcome table_fidelity() {
  auto start = Clock::now();
  const FormKind forms[] = {FormKind::InputOnly, FormKind::ConstOnly, FormKind::InputUnionConst,
                            FormKind::ConstMinusInput};
  std::size_t cells = 0, good = 0, mismatches = 0;
  std::string problems;
  for (NodeKind op : {NodeKind::Union, NodeKind::Difference})
    for (FormKind l : forms)
      for (FormKind r : forms) {
        CellCheck c = check_table_cell(op, l, r, mix_seed(kSeed, cells), {});
        ++cells;
        mismatches += c.mismatches;
        bool ok = c.realized && c.mismatches == 0 && c.inputs_checked == 1000 && c.points_checked == 10000000;
        if (ok) ++good;
        else problems += " [" + to_string(l) + " " + op_symbol(op) + " " + to_string(r) + "]";
      }
  double t = seconds_since(start);
  Outcome o;
  o.pass = good == 32 && t < 300;
  o.detail = std::to_string(good) + "/32 cells, " + std::to_string(mismatches) + " mismatches, 10^3 inputs x 10^4 points per cell, " +
             fixed(t) + " s (limit 300 s)" + problems;
  return o;
}

Outcome end_to_end(const fs::path& dir, const fs::path& sets, std::size_t n, double limit, std::size_t min_lists) {
  Environment env = load(sets);
  WitnessOptions options;
  options.initial = Box::cube(n, -2, 2);
  options.equality.samples = 10000;
  options.equality.seed = kSeed;
  Outcome o;
  std::size_t lists = 0, expressions = 0;
  double slowest = 0;
  bool has_worked_example = n != 3;
  for (const fs::path& file : lists_in(dir, "list")) {
    auto start = Clock::now();
    std::vector<Expr> exprs = load_exprs(file, env, n);
    for (const Expr& e : exprs)
      if (to_string(e) == "proj[1,2]((S & G1) | (G2 \\ S)) \\ proj[1,3](S | G3)") has_worked_example = true;
    WitnessPair w = witness_cpfree(exprs, n, options);
    std::string problem = shape_problem(w);
    for (const ExpressionVerdict& v : w.verdicts) {
      if (!problem.empty()) break;
      if (v.method != Method::Structural || v.verdict != Verdict::Equal)
        problem = "expression " + std::to_string(v.id) + " not structurally Equal";
      else if (v.sampled.verdict != Verdict::Equal || v.sampled.samples < 10000)
        problem = "expression " + std::to_string(v.id) + " spot check " + to_string(v.sampled.verdict);
    }
    double t = seconds_since(start);
    slowest = std::max(slowest, t);
    if (t >= limit) problem = "took " + fixed(t) + " s";
    if (!problem.empty()) {
      o.pass = false;
      o.detail += " [" + file.filename().string() + ": " + problem + "]";
    }
    ++lists;
    expressions += exprs.size();
  }
  if (lists < min_lists) o.pass = false;
  if (!has_worked_example) {
    o.pass = false;
    o.detail += " [worked example missing from corpus]";
  }
  o.detail = std::to_string(lists) + " lists, " + std::to_string(expressions) +
             " expressions, A=1/B=2 components at scale/4, 10^4-point spot checks, slowest list " + fixed(slowest) +
             " s (limit " + fixed(limit, 0) + " s)" + o.detail;
  return o;
}

Outcome cpfree_ternary() { return end_to_end(kCorpus / "cpfree3", kCorpus / "constants3.sets", 3, 120, 10); }
Outcome cpfree_quaternary() { return end_to_end(kCorpus / "cpfree4", kCorpus / "constants4.sets", 4, 300, 3); }

Outcome onepass_agreement() {
  Environment env = load(kCorpus / "onepass" / "constants.sets");
  std::vector<Expr> exprs = load_exprs(kCorpus / "onepass" / "normalize.rae", env, 3);
  SemiAlgebraicSet s = ball_of(AffineMap(Rational(3, 4), {Rational(1, 4), 0, Rational(-1, 4)}), 3);
  Outcome o;
  std::size_t conflicts = 0;
  double worst = 0;
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    OnePassNF nf = normalize_onepass(exprs[i], 3);
    MembershipOracle original = eval_oracle(exprs[i], s), normal = nf.oracle(s);
    Rng rng(mix_seed(kSeed, i));
    Box region = Box::cube(exprs[i]->arity, -2, 2);
    std::size_t unknown = 0, bad = 0;
    const std::size_t queries = 10000;
    for (std::size_t q = 0; q < queries; ++q) {
      Point p = rng.in_box(region, 8);
      Answer x = original(p), y = normal(p);
      if (x == Answer::Unknown || y == Answer::Unknown) ++unknown;
      else if (x != y) ++bad;
    }
    double rate = double(unknown) / queries;
    worst = std::max(worst, rate);
    conflicts += bad;
    if (bad || rate >= 0.01) {
      o.pass = false;
      o.detail += " [" + to_string(exprs[i]) + ": " + std::to_string(bad) + " conflicts, unknown " + fixed(100 * rate, 2) + "%]";
    }
  }
  if (exprs.size() < 20) o.pass = false;
  o.detail = std::to_string(exprs.size()) + " expressions x 10^4 queries, " + std::to_string(conflicts) +
             " conflicts, worst unknown rate " + fixed(100 * worst, 2) + "% (limit 1%)" + o.detail;
  return o;
}

Outcome onepass_witness() {
  Environment env = load(kCorpus / "onepass" / "constants.sets");
  WitnessOptions options;
  options.equality.samples = 10000;
  options.equality.seed = kSeed;
  Outcome o;
  std::size_t lists = 0, rejected = 0;
  auto check = [&](const std::string& name, const WitnessPair& w) {
    std::string problem;
    if (!w.found) problem = "no tau found";
    for (const ExpressionVerdict& v : w.verdicts) {
      if (!problem.empty()) break;
      if (v.verdict != Verdict::Equal) problem = "expression " + std::to_string(v.id) + " " + to_string(v.verdict);
      else if (!v.squeeze_violations || *v.squeeze_violations)
        problem = "expression " + std::to_string(v.id) + " squeeze violated";
    }
    if (problem.empty()) problem = shape_problem(w);
    if (!problem.empty()) {
      o.pass = false;
      o.detail += " [" + name + ": " + problem + "]";
    }
  };
  for (const fs::path& file : lists_in(kCorpus / "onepass", "list")) {
    WitnessPair w = witness_onepass(load_exprs(file, env, 3), {}, options);
    check(file.filename().string(), w);
    rejected += w.rejected.size();
    ++lists;
  }
  if (lists < 5) o.pass = false;

  Environment crafted_env = load(kCorpus / "onepass" / "crafted.sets");
  OnePassSearch search;
  search.centers = {Point{0, 0, 0}};
  WitnessPair w = witness_onepass(load_exprs(kCorpus / "onepass" / "crafted.rae", crafted_env, 3), search, options);
  check("crafted", w);
  bool shrank = w.found && w.tau.scale() == Rational(1, 8) && w.rejected.size() == 2 &&
                w.rejected[0].tau.scale() == Rational(1, 2) && w.rejected[1].tau.scale() == Rational(1, 4);
  if (!shrank) {
    o.pass = false;
    o.detail += " [crafted: expected rejections at 1/2 and 1/4, acceptance at 1/8]";
  }
  o.detail = std::to_string(lists) + " lists found with zero conflicts and zero squeeze violations (" +
             std::to_string(rejected) + " candidates rejected on the way); crafted instance rejected 1/2, 1/4, accepted " +
             to_string(w.tau.scale()) + o.detail;
  return o;
}

SemiAlgebraicSet random_lambda(Rng& rng) {
  std::vector<BasicSet> ds;
  int count = 1 + static_cast<int>(rng.below(2));
  for (int c = 0; c < count; ++c) {
    Polynomial p = Polynomial::constant(3, Rational(rng.integer(-4, 4), 4));
    for (std::size_t i = 0; i < 3; ++i) {
      p += Polynomial::variable(3, i) * Rational(rng.integer(-2, 2));
      if (rng.below(2)) p += Polynomial::variable(3, i).pow(2) * Rational(rng.integer(-2, 2));
      for (std::size_t j = i + 1; j < 3; ++j)
        if (rng.below(4) == 0) p += Polynomial::variable(3, i) * Polynomial::variable(3, j) * Rational(rng.integer(-1, 1));
    }
    if (rng.below(5) == 0)
      ds.push_back(BasicSet(3, {p}, {}));
    else
      ds.push_back(BasicSet(3, {}, {p}));
  }
  return SemiAlgebraicSet(3, ds);
}

Outcome uniform_box() {
  Rng rng(mix_seed(kSeed, 2));
  Outcome o;
  std::size_t violations = 0, exhausted = 0, sets = 0;
  for (int family = 0; family < 100; ++family) {
    std::vector<SemiAlgebraicSet> ls;
    std::size_t k = rng.below(7);
    for (std::size_t i = 0; i < k; ++i) ls.push_back(random_lambda(rng));
    sets += k;
    UniformBoxResult r;
    try {
      r = find_uniform_box(ls, Box::cube(3, -2, 2));
    } catch (const BudgetExhausted&) {
      ++exhausted;
      continue;
    }
    std::vector<bool> inside(k, false);
    for (std::size_t i : r.inside) inside[i] = true;
    for (std::size_t i = 0; i < k; ++i) {
      Containment want = inside[i] ? Containment::FullyIn : Containment::FullyOut;
      if (r.certificates[i].status != want) ++violations;
    }
    Rng check(mix_seed(kSeed, 1000 + family));
    for (int q = 0; q < 10000; ++q) {
      Point p = check.in_box(r.v, 16);
      for (std::size_t i = 0; i < k; ++i)
        if (sa_member(ls[i], p) != inside[i]) ++violations;
    }
  }
  o.pass = violations == 0 && exhausted == 0;
  o.detail = "100 families (" + std::to_string(sets) + " sets, k <= 6, degree <= 2), " + std::to_string(exhausted) +
             " budget failures, " + std::to_string(violations) + " partition violations in 10^4-point re-checks";
  return o;
}

Outcome extreme_values() {
  Rng rng(mix_seed(kSeed, 6));
  Outcome o;
  std::size_t passed = 0, attempts = 0, tried = 0;
  double worst_gap = 0;
  while (tried < 20 && attempts < 5000) {
    ++attempts;
    Polynomial f = Polynomial::constant(3, Rational(rng.integer(-3, 3)));
    for (std::size_t i = 0; i < 3; ++i) {
      Polynomial x = Polynomial::variable(3, i);
      int a = static_cast<int>(rng.integer(-3, 3));
      f += x * Rational(a);
      if (rng.below(2)) f += x.pow(3) * Rational(a >= 0 ? rng.integer(0, 2) : -rng.integer(0, 2));
      for (std::size_t j = i + 1; j < 3; ++j)
        if (rng.below(3) == 0) f += x * Polynomial::variable(3, j) * Rational(rng.integer(-1, 1), 2);
    }
    AffineMap tau(rng.uniform(Rational(1, 8), 1, 6),
                  {rng.uniform(-1, 1, 6), rng.uniform(-1, 1, 6), rng.uniform(-1, 1, 6)});
    if (!certify_regular(f, tau.ball_bounding_box(Rational(9, 8))).regular) continue;
    ++tried;
    ExtremeReport r = check_extreme(f, tau);
    worst_gap = std::max(worst_gap, r.coverage_gap);
    if (r.extrema_ok && r.image_interval_ok) {
      ++passed;
    } else {
      o.detail += " [" + f.to_string() + " under " + to_string(tau) + "]";
    }
  }
  o.pass = tried == 20 && passed == 20;
  o.detail = std::to_string(passed) + "/" + std::to_string(tried) +
             " certified-regular polynomials at 10^5 samples, extrema within 1e-6 relative, worst coverage gap " +
             fixed(worst_gap, 5) + " (limit 1e-2)" + o.detail;
  return o;
}

bool holds(Relation rel, const Rational& v) {
  switch (rel) {
    case Relation::Positive: return sgn(v) > 0;
    case Relation::Negative: return sgn(v) < 0;
    case Relation::NonZero: return sgn(v) != 0;
    case Relation::Zero: return sgn(v) == 0;
  }
  return false;
}

Outcome interval_soundness() {
  Rng rng(mix_seed(kSeed, 8));
  const Relation rels[] = {Relation::Positive, Relation::Negative, Relation::NonZero, Relation::Zero};
  std::size_t verdicts = 0, contradictions = 0, trials = 0;
  while (verdicts < 100000) {
    ++trials;
    std::size_t n = 1 + rng.below(3);
    Polynomial p = Polynomial::constant(n, rng.integer(-3, 3));
    for (std::size_t i = 0; i < n; ++i) {
      p += Polynomial::variable(n, i) * Rational(rng.integer(-3, 3));
      for (std::size_t j = i; j < n; ++j)
        if (rng.below(2)) p += Polynomial::variable(n, i) * Polynomial::variable(n, j) * Rational(rng.integer(-2, 2));
    }
    Point lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = rng.uniform(-3, 3, 4);
      hi[i] = lo[i] + rng.uniform(Rational(1, 16), 2, 4);
    }
    Box b(lo, hi);
    Relation rel = rels[rng.below(4)];
    SignVerdict v = certify_sign(p, b, rel, 64);
    if (v != SignVerdict::CertTrue && v != SignVerdict::CertFalse) continue;
    ++verdicts;
    bool expect = v == SignVerdict::CertTrue;
    // The corners are in the closed box the certificate covers.
    if (holds(rel, p.eval(lo)) != expect || holds(rel, p.eval(hi)) != expect) ++contradictions;
    for (int s = 0; s < 98; ++s)
      if (holds(rel, p.eval(rng.in_box(b, 10))) != expect) ++contradictions;
  }
  Outcome o;
  o.pass = contradictions == 0;
  o.detail = std::to_string(verdicts) + " certified verdicts (from " + std::to_string(trials) +
             " queries) x 10^2 exact evaluations, " + std::to_string(contradictions) + " contradictions";
  return o;
}

Outcome determinism() {
  std::vector<cli::RunConfig> configs;
  auto add = [&](std::string command, fs::path input, fs::path sets, std::size_t n = 3) {
    cli::RunConfig c;
    c.command = std::move(command);
    c.input = input.string();
    c.sets = sets.string();
    c.n = n;
    c.seed = 7;
    c.sample_budget = 2000;
    configs.push_back(c);
    return &configs.back();
  };
  add("classify", kCorpus / "onepass" / "normalize.rae", kCorpus / "onepass" / "constants.sets");
  add("normalize", kCorpus / "cpfree3" / "list01.rae", kCorpus / "constants3.sets");
  add("witness-cpfree", kCorpus / "cpfree3" / "list09.rae", kCorpus / "constants3.sets");
  add("witness-cpfree", kCorpus / "cpfree4" / "list01.rae", kCorpus / "constants4.sets", 4);
  add("witness-onepass", kCorpus / "onepass" / "list04.rae", kCorpus / "onepass" / "constants.sets");
  add("witness-onepass", kCorpus / "onepass" / "crafted.rae", kCorpus / "onepass" / "crafted.sets")->centers = {
      Point{0, 0, 0}};
  add("connectivity", kCorpus / "onepass" / "crafted.sets", "")->resolution = Rational(1, 32);
  add("verify", kCorpus / "constants3.sets", "")->names = {"G1", "H1"};
  Outcome o;
  std::size_t identical = 0;
  for (const cli::RunConfig& c : configs) {
    cli::RunResult a = cli::run(c), b = cli::run(c);
    bool same = a.report.dump(2) == b.report.dump(2) && a.text == b.text && a.sets_file == b.sets_file &&
                a.exit_code == b.exit_code;
    if (a.exit_code == cli::kInputError) {
      same = false;
      o.detail += " [" + c.command + ": input error " + a.text + "]";
    }
    if (same) ++identical;
    else o.detail += " [" + c.command + " " + c.input + " differs]";
  }
  o.pass = identical == configs.size();
  o.detail = std::to_string(identical) + "/" + std::to_string(configs.size()) +
             " pipelines produced byte-identical reports on repetition" + o.detail;
  return o;
}

struct Criterion {
  const char* key;
  const char* title;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"table", "Table fidelity", table_fidelity},
    {"cpfree_ternary", "Product-free witness, ternary input", cpfree_ternary},
    {"cpfree_quaternary", "Product-free witness, quaternary input", cpfree_quaternary},
    {"onepass_agreement", "One-pass normal form agreement", onepass_agreement},
    {"onepass_witness", "One-pass witness search", onepass_witness},
    {"uniform_box", "Uniform box partitions", uniform_box},
    {"extreme_values", "Extreme values on sphere and ball", extreme_values},
    {"interval", "Interval soundness", interval_soundness},
    {"determinism", "Determinism", determinism},
};

}  // namespace
}  // namespace saw

int main(int argc, char** argv) {
  std::vector<std::string> only(argv + 1, argv + argc);
  int failed = 0;
  for (const saw::Criterion& c : saw::kCriteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.key) == only.end()) continue;
    auto start = saw::Clock::now();
    saw::Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.title << ": " << o.detail << " [" << saw::fixed(saw::seconds_since(start))
              << " s]" << std::endl;
  }
  return failed ? 1 : 0;
}
