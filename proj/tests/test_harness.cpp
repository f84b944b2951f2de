#include <gtest/gtest.h>

#include <cmath>
#include <deque>

#include "saw/harness.hpp"
#include "saw/sampling.hpp"

namespace saw {
namespace {

SemiAlgebraicSet sphere() { return sphere_of(AffineMap::identity(3), 3); }
SemiAlgebraicSet dotted() { return dotted_sphere_of(AffineMap::identity(3), 3); }

MembershipOracle shadow(const SemiAlgebraicSet& s) { return eval_oracle(parse_rae("proj[1,2](S)", {}, 3), s); }

EqualityOptions quick() {
  EqualityOptions o;
  o.samples = 2000;
  return o;
}

TEST(SetsEqual, Examples) {
  Box plane = Box::cube(2, -2, 2);
  EqualityVerdict a = sets_equal(shadow(sphere()), shadow(ball_of(AffineMap::identity(3), 3)), plane, quick());
  EXPECT_EQ(a.verdict, Verdict::Equal);
  EXPECT_FALSE(a.certified);

  EqualityVerdict b = sets_equal(MembershipOracle::of_set(sphere(), "sphere"), MembershipOracle::of_set(dotted(), "dotted"),
                                 Box::cube(3, -2, 2), quick());
  EXPECT_EQ(b.verdict, Verdict::Differ);
  ASSERT_TRUE(b.witness.has_value());
  EXPECT_EQ(*b.witness, (Point{0, 0, 0}));

  EqualityVerdict c = sets_equal(shadow(sphere()), shadow(dotted()), plane, quick());
  EXPECT_EQ(c.verdict, Verdict::Equal);
  EXPECT_EQ(c.unknown, 0u);
}

TEST(SetsEqual, CertifiesClosedForms) {
  auto half = [](const char* t) {
    return MembershipOracle::of_set(SemiAlgebraicSet::from_basic(BasicSet(3, {}, {parse_polynomial(t, 3)})), t);
  };
  EqualityVerdict v = sets_equal(half("x1 - 1/3"), half("3*x1 - 1"), Box::cube(3, -1, 1), quick());
  EXPECT_EQ(v.verdict, Verdict::Equal);
  EXPECT_TRUE(v.certified);
  EXPECT_THROW(sets_equal(half("x1"), shadow(sphere()), Box::cube(3, -1, 1)), DimensionMismatch);
}

TEST(SetsEqualProperty, Symmetric) {
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    AffineMap t1(Rational(rng.integer(1, 4), 4), {Rational(rng.integer(-2, 2), 4), 0, 0});
    AffineMap t2 = rng.below(2) ? t1 : AffineMap(Rational(rng.integer(1, 4), 4), {0, Rational(rng.integer(-2, 2), 4), 0});
    MembershipOracle x = shadow(sphere_of(t1, 3)), y = shadow(dotted_sphere_of(t2, 3));
    EqualityVerdict a = sets_equal(x, y, Box::cube(2, -2, 2), quick()), b = sets_equal(y, x, Box::cube(2, -2, 2), quick());
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(a.verdict, t1 == t2 ? Verdict::Equal : Verdict::Differ);
  }
}

// Independent occupancy: every cell certified on its own, then BFS.
std::size_t flood_fill_components(const SemiAlgebraicSet& x, const Box& region, const Rational& res,
                                  std::set<std::size_t>& occupied) {
  std::size_t m = Rational(region.width(0) / res).get_num().get_ui();
  auto box = [&](std::size_t i, std::size_t j, std::size_t k) {
    return Box(Point{region.lo(0) + res * i, region.lo(1) + res * j, region.lo(2) + res * k},
               Point{region.lo(0) + res * (i + 1), region.lo(1) + res * (j + 1), region.lo(2) + res * (k + 1)});
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if (certify_set_status(x, box(i, j, k), 64).status != Containment::FullyOut) occupied.insert((i * m + j) * m + k);
  for (const Point& p : x.distinguished_points()) {
    std::size_t c = 0;
    for (std::size_t a = 0; a < 3; ++a) {
      Rational t = (p[a] - region.lo(a)) / res;
      mpz_class f;
      mpz_fdiv_q(f.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
      c = c * m + f.get_ui();
    }
    occupied.insert(c);
  }
  std::set<std::size_t> seen;
  std::size_t comps = 0;
  for (std::size_t start : occupied) {
    if (seen.count(start)) continue;
    ++comps;
    std::deque<std::size_t> q{start};
    seen.insert(start);
    while (!q.empty()) {
      std::size_t c = q.front();
      q.pop_front();
      std::size_t i = c / (m * m), j = (c / m) % m, k = c % m;
      std::vector<std::size_t> nb;
      if (i > 0) nb.push_back(c - m * m);
      if (i + 1 < m) nb.push_back(c + m * m);
      if (j > 0) nb.push_back(c - m);
      if (j + 1 < m) nb.push_back(c + m);
      if (k > 0) nb.push_back(c - 1);
      if (k + 1 < m) nb.push_back(c + 1);
      for (std::size_t d : nb)
        if (occupied.count(d) && seen.insert(d).second) q.push_back(d);
    }
  }
  return comps;
}

TEST(GridConnectivity, MatchesFloodFill) {
  Box region = Box::cube(3, -2, 2);
  for (const SemiAlgebraicSet& x : {sphere(), dotted()}) {
    std::set<std::size_t> occupied;
    std::size_t want = flood_fill_components(x, region, Rational(1, 4), occupied);
    GridComponents g = grid_connectivity(x, region, Rational(1, 4));
    EXPECT_EQ(g.components, want);
    std::set<std::size_t> got;
    for (const auto& [cell, comp] : g.cell_component) got.insert(cell);
    EXPECT_EQ(got, occupied);
  }
}

TEST(GridConnectivity, Examples) {
  Box region = Box::cube(3, -2, 2);
  GridComponents s = grid_connectivity(sphere(), region, Rational(1, 8));
  EXPECT_EQ(s.components, 1u);
  GridComponents d = grid_connectivity(dotted(), region, Rational(1, 8), {Point{0, 0, 0}, Point{1, 0, 0}});
  EXPECT_EQ(d.components, 2u);
  ASSERT_TRUE(d.seed_components[0] && d.seed_components[1]);
  EXPECT_NE(*d.seed_components[0], *d.seed_components[1]);
  EXPECT_EQ(grid_connectivity(SemiAlgebraicSet::empty(3), region, Rational(1, 8)).components, 0u);
  EXPECT_THROW(grid_connectivity(sphere(), region, Rational(3, 7)), Error);
}

TEST(GridConnectivity, OracleOccupancy) {
  GridComponents g = grid_connectivity(shadow(sphere()), Box::cube(2, -2, 2), Rational(1, 4));
  EXPECT_EQ(g.components, 1u);
  EXPECT_GE(g.cell_component.size(), 36u);
}

TEST(GridConnectivityProperty, CountStableUnderRefinement) {
  Box region = Box::cube(3, -2, 2);
  for (const SemiAlgebraicSet& x : {sphere(), dotted()}) {
    std::size_t prev = 0;
    for (Rational res : {Rational(1, 8), Rational(1, 4), Rational(1, 2)}) {
      std::size_t c = grid_connectivity(x, region, res).components;
      if (prev) EXPECT_LE(c, prev);
      prev = c;
    }
  }
}

TEST(CheckExtreme, Examples) {
  ExtremeReport a = check_extreme(parse_polynomial("x1 + x2 + x3", 3), AffineMap::identity(3));
  EXPECT_NEAR(a.min_sphere, -std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(a.max_sphere, std::sqrt(3.0), 1e-9);
  EXPECT_TRUE(a.extrema_ok);
  EXPECT_TRUE(a.image_interval_ok);

  ExtremeReport c = check_extreme(parse_polynomial("7", 3), AffineMap::identity(3));
  EXPECT_EQ(c.min_ball, 7);
  EXPECT_EQ(c.max_sphere, 7);
  EXPECT_TRUE(c.extrema_ok && c.image_interval_ok);

  ExtremeReport x = check_extreme(parse_polynomial("x1", 3), AffineMap(Rational(1, 2), {1, 0, 0}));
  EXPECT_NEAR(x.min_ball, 0.5, 1e-9);
  EXPECT_NEAR(x.max_ball, 1.5, 1e-9);
  EXPECT_NEAR(x.min_sphere, 0.5, 1e-9);
  EXPECT_TRUE(x.extrema_ok);

  EXPECT_THROW(check_extreme(parse_polynomial("x1^2", 3), AffineMap::identity(3)), Error);
}

TEST(CheckTableCell, SmallRuns) {
  CellCheckOptions o;
  o.inputs = 30;
  o.points = 500;
  for (auto [op, l, r] : {std::tuple{NodeKind::Union, FormKind::ConstMinusInput, FormKind::ConstOnly},
                          std::tuple{NodeKind::Difference, FormKind::InputUnionConst, FormKind::InputUnionConst},
                          std::tuple{NodeKind::Difference, FormKind::ConstMinusInput, FormKind::ConstMinusInput}}) {
    CellCheck c = check_table_cell(op, l, r, 3, o);
    ASSERT_TRUE(c.realized) << to_string(l) << " " << op_symbol(op) << " " << to_string(r);
    EXPECT_EQ(c.mismatches, 0u) << to_string(c.expr);
    EXPECT_EQ(c.inputs_checked, 30u);
    EXPECT_EQ(c.points_checked, 30u * 500u);
  }
}

}  // namespace
}  // namespace saw
